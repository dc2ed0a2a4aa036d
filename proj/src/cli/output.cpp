#include "loscov/cli/output.hpp"

#include "loscov/cli/config.hpp"
#include "loscov/version.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace loscov::cli {

std::string format_double(double v)
{
    if (v == 0.0)
        v = 0.0;  // drop the sign of -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
    if (res.ec != std::errc())
        throw std::runtime_error("failed to format number");
    return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : n_columns_(header.size())
{
    add_row(std::move(header));
    n_rows_ = 0;
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != n_columns_)
        throw std::logic_error("CSV row has the wrong number of columns");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0)
            text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
    ++n_rows_;
}

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv, nlohmann::json config)
{
    const auto& pl = config.at("pathloss");
    doc_ = {
        {"tool", "loscov"},
        {"version", std::string(version)},
        {"command", std::move(command)},
        {"command_line", std::move(argv)},
        {"started_utc", utc_timestamp()},
        {"conventions",
         {{"lambda_convention", config.at("deployment").at("lambda_convention")},
          {"alpha_los", pl.at("alpha_los")},
          {"alpha_nlos", pl.at("alpha_nlos")},
          {"exponent_ordering",
           pl.at("alpha_los").get<double>() > pl.at("alpha_nlos").get<double>() ? "default (alpha_los > alpha_nlos)"
                                                                                 : "conventional (alpha_los <= alpha_nlos)"},
          {"carrier_ghz_metadata_only", config.at("deployment").at("carrier_ghz")}}},
        {"seeds", {{"mc.seed", config.at("mc").at("seed")}}},
        {"config", std::move(config)},
        {"outputs", nlohmann::json::array()},
        {"notes", nlohmann::json::array()},
    };
}

void RunManifest::write_output(const std::filesystem::path& out_dir, const std::string& name,
                               const std::string& contents)
{
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << contents;
    out.close();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
    doc_["outputs"].push_back({{"file", name}, {"sha256", sha256_hex(contents)}, {"bytes", contents.size()}});
}

void RunManifest::add_note(std::string note) { doc_["notes"].push_back(std::move(note)); }

void RunManifest::set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }

std::filesystem::path RunManifest::finish(const std::filesystem::path& out_dir)
{
    doc_["finished_utc"] = utc_timestamp();
    const auto path = out_dir / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << doc_.dump(2) << '\n';
    return path;
}

}  // namespace loscov::cli
