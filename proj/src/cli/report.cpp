#include "zetalaw/cli/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>

#include "zetalaw/errors.hpp"

namespace zetalaw::cli {

nlohmann::ordered_json Report::to_json(bool with_timestamp) const {
    nlohmann::ordered_json out;
    out["tool_version"] = kToolVersion;
    out["command"] = command;
    if (with_timestamp) out["generated_at"] = utc_timestamp();
    out["inputs_digest"] = inputs_digest;
    out["params"] = params;
    out["results"] = results;
    out["warnings"] = warnings;
    out["files"] = files;
    return out;
}

std::string digest_files(const std::vector<std::string>& paths) {
    if (paths.empty()) return {};
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("digest: sha256 unavailable");
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("digest: cannot open " + path);
        const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const std::string name = std::filesystem::path(path).filename().string();
        const std::string prefix = std::to_string(name.size()) + ":" + name + ":" + std::to_string(body.size()) + ":";
        EVP_DigestUpdate(ctx.get(), prefix.data(), prefix.size());
        EVP_DigestUpdate(ctx.get(), body.data(), body.size());
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        char byte[3];
        std::snprintf(byte, sizeof byte, "%02x", md[i]);
        hex += byte;
    }
    return "sha256:" + hex;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_report(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("report: cannot write " + path);
    out << report.to_json().dump(2) << '\n';
}

}  // namespace zetalaw::cli
