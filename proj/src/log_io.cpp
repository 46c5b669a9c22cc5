#include "stallnet/log_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stallnet/error.hpp"
#include "stallnet/numfmt.hpp"

namespace stallnet {
namespace {

using nlohmann::json;

void append_event_line(std::string& out, const ImprovementEvent& e) {
    out += "{\"evals\":";
    out += std::to_string(e.evals);
    out += ",\"fitness\":";
    append_double(out, e.fitness);
    out += ",\"x\":[";
    for (std::size_t i = 0; i < e.genotype.size(); ++i) {
        if (i > 0) out += ',';
        append_double(out, e.genotype[i]);
    }
    out += "]}\n";
}

}  // namespace

std::string serialize_log(const TrajectoryLog& log) {
    std::string out;
    out += "{\"format\":\"stallnet-log\",\"version\":";
    out += std::to_string(kLogFormatVersion);
    out += ",\"algorithm\":\"";
    out += to_string(log.algorithm);
    out += "\",\"function\":\"";
    out += to_string(log.function_id);
    out += "\",\"dimension\":";
    out += std::to_string(log.dimension);
    out += ",\"seed\":";
    out += std::to_string(log.seed);
    out += ",\"budget\":";
    out += std::to_string(log.budget);
    out += ",\"pop\":";
    out += std::to_string(log.pop_size);
    out += ",\"final_evals\":";
    out += std::to_string(log.final_evals);
    out += ",\"generator\":\"";
    out += kGeneratorName;
    out += "\"}\n";
    for (const ImprovementEvent& e : log.events) append_event_line(out, e);
    return out;
}

void write_log(const TrajectoryLog& log, std::ostream& out) { out << serialize_log(log); }

void write_log_file(const TrajectoryLog& log, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << serialize_log(log);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

TrajectoryLog parse_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("log file: missing metadata line");

    json meta = json::parse(line, nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) {
        throw ValidationError("log file: metadata line is not a JSON object");
    }
    if (meta.value("format", "") != "stallnet-log") {
        throw ValidationError("log file: unexpected format tag");
    }
    if (meta.value("version", 0) != kLogFormatVersion) {
        throw ValidationError("log file: unsupported version");
    }

    TrajectoryLog log;
    const auto algo = algorithm_from_string(meta.value("algorithm", ""));
    if (!algo) throw ValidationError("log file: unknown algorithm");
    log.algorithm = *algo;
    const auto fn = function_from_string(meta.value("function", ""));
    if (!fn) throw ValidationError("log file: unknown function");
    log.function_id = *fn;
    log.dimension = meta.value("dimension", 0);
    log.seed = meta.value("seed", std::uint64_t{0});
    log.budget = meta.value("budget", std::uint64_t{0});
    log.pop_size = meta.value("pop", std::uint32_t{1});
    log.final_evals = meta.value("final_evals", std::uint64_t{0});

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("evals") ||
            !rec.contains("fitness") || !rec.contains("x") || !rec["x"].is_array()) {
            throw ValidationError("log file: bad event record at line " +
                                  std::to_string(line_no));
        }
        ImprovementEvent e;
        e.evals = rec["evals"].get<std::uint64_t>();
        e.fitness = rec["fitness"].get<double>();
        e.genotype = rec["x"].get<std::vector<double>>();
        log.events.push_back(std::move(e));
    }
    validate_log(log);
    return log;
}

TrajectoryLog read_log_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    try {
        return parse_log(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

}  // namespace stallnet
