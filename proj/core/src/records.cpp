#include "rngprobe/records.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <map>

#include <json.hpp>

namespace rngprobe::records {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

stats::Family family_from_json(const json& j, const std::string& context) {
    if (!j.contains("family")) return stats::Family::unspecified;
    try {
        return stats::family_from_name(j["family"].get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(context + ": " + e.what());
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

RunManifest parse_manifest(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError(path.string() + ": manifest must be a JSON object");

    RunManifest m;
    if (!doc.contains("samples") || !doc["samples"].is_array() || doc["samples"].empty()) {
        throw ParseError(path.string() + ": manifest needs a nonempty samples array");
    }
    for (const auto& js : doc["samples"]) {
        SampleSpec s;
        s.label = js.value("label", "");
        s.kind = js.value("kind", "");
        if (s.label.empty()) throw ParseError("sample without a label");
        s.family = family_from_json(js, "sample " + s.label);
        if (s.kind == "mt19937" || s.kind == "gfsr4") {
            if (s.family == stats::Family::unspecified) s.family = stats::Family::prng;
            s.seed = js.value("seed", 0u);
            s.count = js.value("count", std::size_t{0});
            s.length_bits = js.value("length_bits", std::uint64_t{0});
            if (s.count < 1 || s.length_bits < 1) {
                throw ParseError("sample " + s.label + ": count and length_bits must be >= 1");
            }
        } else if (s.kind == "file") {
            if (!js.contains("paths") || !js["paths"].is_array() || js["paths"].empty()) {
                throw ParseError("sample " + s.label + ": file kind needs a paths array");
            }
            for (const auto& p : js["paths"]) {
                s.paths.emplace_back(p.get<std::string>());
            }
            s.count = s.paths.size();
        } else if (s.kind == "qrng-http") {
            if (s.family == stats::Family::unspecified) s.family = stats::Family::qrng;
            s.endpoint = js.value("endpoint", "");
            s.block_size = js.value("block_size", std::size_t{1024});
            s.cache = std::filesystem::path(js.value("cache", ""));
            s.count = js.value("count", std::size_t{0});
            s.length_bits = js.value("length_bits", std::uint64_t{0});
            if (s.count < 1 || s.length_bits < 1) {
                throw ParseError("sample " + s.label + ": count and length_bits must be >= 1");
            }
            if (s.endpoint.empty() && s.cache.empty()) {
                throw ParseError("sample " + s.label + ": qrng-http needs an endpoint or a cache");
            }
        } else {
            throw ParseError("sample " + s.label + ": unknown kind '" + s.kind + "'");
        }
        m.samples.push_back(std::move(s));
    }

    if (doc.contains("tests")) {
        for (const auto& t : doc["tests"]) {
            const auto id = test_id_from_name(t.get<std::string>());
            if (!id) throw ParseError("unknown test id '" + t.get<std::string>() + "'");
            m.tests.push_back(*id);
        }
    } else {
        m.tests = {TestId::borel, TestId::csss1, TestId::csss2, TestId::csss3, TestId::csss4};
    }
    m.complement = doc.value("complement", true);
    if (doc.contains("loop_to") && !doc["loop_to"].is_null()) {
        m.loop_to = doc["loop_to"].get<std::uint64_t>();
    }
    if (doc.contains("carmichael")) {
        const auto& c = doc["carmichael"];
        if (c.contains("limit")) m.carmichael_limit = c["limit"].get<std::uint64_t>();
        if (c.contains("file")) m.carmichael_file = std::filesystem::path(c["file"].get<std::string>());
        if (m.carmichael_limit && m.carmichael_file) {
            throw ParseError("carmichael: give either a limit or a file, not both");
        }
    }
    m.out_dir = std::filesystem::path(doc.value("out_dir", "results"));
    m.jobs = doc.value("jobs", 1u);

    // Validation: every referenced input must exist now, not at run time.
    for (const auto& s : m.samples) {
        for (const auto& p : s.paths) {
            if (!std::filesystem::exists(p)) {
                throw ParseError("sample " + s.label + ": missing input file " + p.string());
            }
        }
        if (s.kind == "qrng-http" && s.endpoint.empty() && !std::filesystem::exists(s.cache)) {
            throw ParseError("sample " + s.label + ": cache file " + s.cache.string() +
                             " does not exist and no endpoint is configured");
        }
    }
    if (m.carmichael_file && !std::filesystem::exists(*m.carmichael_file)) {
        throw ParseError("missing Carmichael list " + m.carmichael_file->string());
    }
    return m;
}

std::string manifest_digest(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

ResultRecord to_record(const TestOutcome& o, const std::string& generator, stats::Family family,
                       const std::string& digest) {
    ResultRecord r;
    r.generator = generator;
    r.family = family;
    r.index = o.string_index;
    r.complemented = o.complemented;
    r.test = std::string(test_id_name(o.test));
    r.metric = o.metric;
    r.repetitions = o.repetitions;
    r.bias = o.bias_value;
    if (o.csss12) {
        r.witnesses = o.csss12->witnesses_used;
        r.bits = o.csss12->bits_used;
        r.discarded = o.csss12->discarded;
    }
    if (o.csss3) {
        r.bits = o.csss3->bits_used;
        r.violations = o.csss3->violations;
    }
    if (o.csss4) {
        r.violations = o.csss4->total_violations;
        for (const auto& pn : o.csss4->per_n) {
            r.per_n.push_back({nt::to_string(pn.n), pn.m, pn.k, pn.violations,
                               pn.witnesses_checked});
        }
    }
    r.suite_version = std::string(kSuiteVersion);
    r.manifest_digest = digest;
    r.error = o.error;
    return r;
}

namespace {

json record_to_json(const ResultRecord& r) {
    json j;
    j["type"] = "result";
    j["generator"] = r.generator;
    j["family"] = stats::family_name(r.family);
    j["index"] = r.index;
    j["complemented"] = r.complemented;
    j["test"] = r.test;
    j["metric"] = format_double(r.metric);
    if (r.bias) j["bias"] = format_double(*r.bias);
    if (r.repetitions) j["repetitions"] = *r.repetitions;
    if (r.witnesses) j["witnesses"] = *r.witnesses;
    if (r.bits) j["bits"] = *r.bits;
    if (r.discarded) j["discarded"] = *r.discarded;
    if (r.violations) j["violations"] = *r.violations;
    if (!r.per_n.empty()) {
        json arr = json::array();
        for (const auto& pn : r.per_n) {
            arr.push_back({{"n", pn.n},
                           {"m", pn.m},
                           {"k", pn.k},
                           {"violations", pn.violations},
                           {"witnesses_checked", pn.witnesses_checked}});
        }
        j["per_n"] = arr;
    }
    j["suite_version"] = r.suite_version;
    j["manifest_digest"] = r.manifest_digest;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

ResultRecord record_from_json(const json& j) {
    ResultRecord r;
    r.generator = j.value("generator", "");
    r.family = stats::family_from_name(j.value("family", "unspecified"));
    r.index = j.value("index", std::size_t{0});
    r.complemented = j.value("complemented", false);
    r.test = j.value("test", "");
    r.metric = std::stod(j.value("metric", "0"));
    if (j.contains("bias")) r.bias = std::stod(j["bias"].get<std::string>());
    if (j.contains("repetitions")) r.repetitions = j["repetitions"].get<std::uint64_t>();
    if (j.contains("witnesses")) r.witnesses = j["witnesses"].get<std::uint64_t>();
    if (j.contains("bits")) r.bits = j["bits"].get<std::uint64_t>();
    if (j.contains("discarded")) r.discarded = j["discarded"].get<std::uint64_t>();
    if (j.contains("violations")) r.violations = j["violations"].get<std::uint64_t>();
    if (j.contains("per_n")) {
        for (const auto& p : j["per_n"]) {
            r.per_n.push_back({p.value("n", ""), p.value("m", 0u), p.value("k", 0u),
                               p.value("violations", std::uint64_t{0}),
                               p.value("witnesses_checked", std::uint64_t{0})});
        }
    }
    r.suite_version = j.value("suite_version", "");
    r.manifest_digest = j.value("manifest_digest", "");
    r.error = j.value("error", "");
    return r;
}

}  // namespace

void write_jsonl(const std::filesystem::path& path, std::span<const ResultRecord> records,
                 const std::string& digest) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    // Header line: the only place a timestamp appears, so identical runs
    // diff clean below it.
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    json header;
    header["type"] = "header";
    header["suite_version"] = std::string(kSuiteVersion);
    header["manifest_digest"] = digest;
    header["created_unix"] = static_cast<std::int64_t>(now);
    out << header.dump() << "\n";
    for (const auto& r : records) out << record_to_json(r).dump() << "\n";
    if (!out) throw IoError("write failure on " + path.string());
}

std::vector<ResultRecord> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<ResultRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (j.value("type", "") == "header") continue;
        out.push_back(record_from_json(j));
    }
    return out;
}

void write_csv(const std::filesystem::path& path, std::span<const ResultRecord> records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "generator,family,index,complemented,test,metric,bias,repetitions,error\n";
    for (const auto& r : records) {
        out << r.generator << ',' << stats::family_name(r.family) << ',' << r.index << ','
            << (r.complemented ? "1" : "0") << ',' << r.test << ',' << format_double(r.metric)
            << ',' << (r.bias ? format_double(*r.bias) : "") << ','
            << (r.repetitions ? std::to_string(*r.repetitions) : "") << ','
            << (r.error.empty() ? "" : "\"" + r.error + "\"") << "\n";
    }
    if (!out) throw IoError("write failure on " + path.string());
}

std::vector<stats::Dataset> to_datasets(std::span<const ResultRecord> records) {
    std::map<std::string, stats::Dataset> grouped;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        stats::DatasetKey key{r.generator, r.test, r.complemented, r.family};
        auto [it, inserted] = grouped.try_emplace(key.label());
        if (inserted) it->second.key = key;
        it->second.values.push_back(r.metric);
    }
    std::vector<stats::Dataset> out;
    out.reserve(grouped.size());
    for (auto& [label, ds] : grouped) out.push_back(std::move(ds));
    return out;
}

namespace {

json compare_to_json(const stats::ComparisonReport& c) {
    json j;
    j["type"] = "comparison";
    j["test"] = c.a.test;
    j["generator_a"] = c.a.generator;
    j["orientation_a"] = c.a.complemented ? "complemented" : "original";
    j["generator_b"] = c.b.generator;
    j["orientation_b"] = c.b.complemented ? "complemented" : "original";
    j["cross_orientation"] = c.cross_orientation;
    j["n_a"] = c.n_a;
    j["n_b"] = c.n_b;
    if (!c.skipped.empty()) {
        j["skipped"] = c.skipped;
        return j;
    }
    j["ks_statistic"] = format_double(c.ks_statistic);
    j["ks_p"] = format_double(c.ks_p);
    j["sw_p_a"] = format_double(c.sw_p_a);
    j["sw_p_b"] = format_double(c.sw_p_b);
    j["welch_applied"] = c.welch_applied;
    if (c.welch_applied) {
        j["welch_t"] = format_double(c.welch_t_value);
        j["welch_dof"] = format_double(c.welch_dof);
        j["welch_p"] = format_double(c.welch_p);
    }
    j["significant_ks"] = c.significant_ks;
    j["significant_welch"] = c.significant_welch;
    return j;
}

}  // namespace

void write_compare_jsonl(const std::filesystem::path& path,
                         std::span<const stats::ComparisonReport> reports) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    for (const auto& c : reports) out << compare_to_json(c).dump() << "\n";
    if (!out) throw IoError("write failure on " + path.string());
}

void write_compare_csv(const std::filesystem::path& path,
                       std::span<const stats::ComparisonReport> reports) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "test,generator_a,orientation_a,generator_b,orientation_b,cross_orientation,"
           "n_a,n_b,ks_statistic,ks_p,sw_p_a,sw_p_b,welch_applied,welch_t,welch_dof,welch_p,"
           "significant_ks,significant_welch,skipped\n";
    for (const auto& c : reports) {
        out << c.a.test << ',' << c.a.generator << ','
            << (c.a.complemented ? "complemented" : "original") << ',' << c.b.generator << ','
            << (c.b.complemented ? "complemented" : "original") << ','
            << (c.cross_orientation ? "1" : "0") << ',' << c.n_a << ',' << c.n_b << ',';
        if (c.skipped.empty()) {
            out << format_double(c.ks_statistic) << ',' << format_double(c.ks_p) << ','
                << format_double(c.sw_p_a) << ',' << format_double(c.sw_p_b) << ','
                << (c.welch_applied ? "1" : "0") << ','
                << (c.welch_applied ? format_double(c.welch_t_value) : "") << ','
                << (c.welch_applied ? format_double(c.welch_dof) : "") << ','
                << (c.welch_applied ? format_double(c.welch_p) : "") << ','
                << (c.significant_ks ? "1" : "0") << ',' << (c.significant_welch ? "1" : "0")
                << ",\n";
        } else {
            out << ",,,,,,,,," << '"' << c.skipped << '"' << "\n";
        }
    }
    if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace rngprobe::records
