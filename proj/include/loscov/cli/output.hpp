#pragma once

#include <json.hpp>

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace loscov::cli {

/// 9 significant digits, correctly rounded (ties to even), '.' decimal
/// separator regardless of locale.
std::string format_double(double v);

/// In-memory CSV with a fixed header and '\n' line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::size_t rows() const { return n_rows_; }
    const std::string& text() const { return text_; }

private:
    std::size_t n_columns_;
    std::size_t n_rows_ = 0;
    std::string text_;
};

std::string sha256_hex(std::string_view data);

/// Collects written outputs and emits manifest.json next to them.
class RunManifest {
public:
    RunManifest(std::string command, std::vector<std::string> argv, nlohmann::json config);

    /// Writes `contents` to out_dir/name and records its digest.
    void write_output(const std::filesystem::path& out_dir, const std::string& name, const std::string& contents);
    void add_note(std::string note);
    void set(const std::string& key, nlohmann::json value);

    /// Writes out_dir/manifest.json and returns its path.
    std::filesystem::path finish(const std::filesystem::path& out_dir);

    const nlohmann::json& document() const { return doc_; }

private:
    nlohmann::json doc_;
};

std::string utc_timestamp();

}  // namespace loscov::cli
