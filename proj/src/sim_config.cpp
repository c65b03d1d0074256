#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mimo/sim.hpp"

namespace mimo {

using nlohmann::json;

double SimConfig::snr_db_at(std::size_t i) const {
    if (!snr_db.empty()) return snr_db[i];
    return -10.0 * std::log10(eta2[i]);
}

double SimConfig::eta2_at(std::size_t i) const {
    if (!eta2.empty()) return eta2[i];
    return std::pow(10.0, -snr_db[i] / 10.0);
}

PathLossSpec SimConfig::path_loss() const {
    if (sigma.empty()) return PathLossSpec::uniform(k);
    return PathLossSpec{sigma};
}

void SimConfig::validate() const {
    if (k < 1 || n < k) throw ConfigInvalid("need N >= K >= 1");
    if (trials < 1) throw ConfigInvalid("trials must be >= 1");
    if (snr_db.empty() == eta2.empty())
        throw ConfigInvalid("exactly one of snr_db / eta2 must be given and nonempty");
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw ConfigInvalid("zeta must be in [0, 1]");
    if (detectors.empty()) throw ConfigInvalid("at least one detector required");
    if (frames_per_realization < 1) throw ConfigInvalid("frames_per_realization must be >= 1");
    if (!sigma.empty() && sigma.size() != k) throw ConfigInvalid("sigma must have K entries");
    for (double s : sigma)
        if (!(s > 0.0)) throw ConfigInvalid("sigma entries must be positive");
    for (std::size_t i = 0; i < sweep_size(); ++i)
        if (!(eta2_at(i) > 0.0)) throw ConfigInvalid("eta2 must be positive");
}

namespace {

Modulation modulation_from_string(const std::string& s) {
    if (s == "qpsk" || s == "qam4") return Modulation::Qpsk;
    if (s == "qam16") return Modulation::Qam16;
    if (s == "qam64") return Modulation::Qam64;
    throw ConfigInvalid("unknown modulation: " + s);
}

std::string modulation_to_string(Modulation m) {
    switch (m) {
        case Modulation::Qpsk: return "qpsk";
        case Modulation::Qam16: return "qam16";
        case Modulation::Qam64: return "qam64";
    }
    return "?";
}

SimConfig parse_config(const json& j) {
    static const std::set<std::string> known = {
        "n", "k", "zeta", "phase_mode", "phase_seed", "snr_db", "eta2",
        "modulation", "detectors", "trials", "master_seed", "min_bit_errors",
        "frames_per_realization", "max_bits_per_point", "sigma", "output_path", "workers"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (known.find(key) == known.end()) throw ConfigInvalid("unknown key: " + key);
    }
    SimConfig cfg;
    cfg.detectors.clear();
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("k")) cfg.k = j.at("k").get<std::size_t>();
    if (j.contains("zeta")) cfg.zeta = j.at("zeta").get<double>();
    if (j.contains("phase_mode")) {
        const std::string pm = j.at("phase_mode").get<std::string>();
        if (pm == "zero") {
            cfg.phase_mode = PhaseMode::Zero;
        } else if (pm == "fixed_random") {
            cfg.phase_mode = PhaseMode::FixedRandom;
        } else {
            throw ConfigInvalid("unknown phase_mode: " + pm);
        }
    }
    if (j.contains("phase_seed")) cfg.phase_seed = j.at("phase_seed").get<std::uint64_t>();
    if (j.contains("snr_db")) cfg.snr_db = j.at("snr_db").get<std::vector<double>>();
    if (j.contains("eta2")) cfg.eta2 = j.at("eta2").get<std::vector<double>>();
    if (j.contains("modulation"))
        cfg.modulation = modulation_from_string(j.at("modulation").get<std::string>());
    if (j.contains("detectors"))
        for (const auto& tag : j.at("detectors"))
            cfg.detectors.push_back(DetectorSpec::parse(tag.get<std::string>()));
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::size_t>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("min_bit_errors")) cfg.min_bit_errors = j.at("min_bit_errors").get<std::size_t>();
    if (j.contains("frames_per_realization"))
        cfg.frames_per_realization = j.at("frames_per_realization").get<std::size_t>();
    if (j.contains("max_bits_per_point"))
        cfg.max_bits_per_point = j.at("max_bits_per_point").get<std::uint64_t>();
    if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<std::vector<double>>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    cfg.validate();
    return cfg;
}

}  // namespace

SimConfig SimConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("config")) j = j.at("config");  // manifests are re-ingestable
    return parse_config(j);
}

SimConfig SimConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string SimConfig::to_json_text() const {
    json j;
    j["n"] = n;
    j["k"] = k;
    j["zeta"] = zeta;
    j["phase_mode"] = phase_mode == PhaseMode::Zero ? "zero" : "fixed_random";
    j["phase_seed"] = phase_seed;
    if (!snr_db.empty()) j["snr_db"] = snr_db;
    if (!eta2.empty()) j["eta2"] = eta2;
    j["modulation"] = modulation_to_string(modulation);
    std::vector<std::string> tags;
    tags.reserve(detectors.size());
    for (const auto& d : detectors) tags.push_back(d.label());
    j["detectors"] = tags;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    j["min_bit_errors"] = min_bit_errors;
    j["frames_per_realization"] = frames_per_realization;
    j["max_bits_per_point"] = max_bits_per_point;
    if (!sigma.empty()) j["sigma"] = sigma;
    j["output_path"] = output_path;
    j["workers"] = workers;
    return j.dump(2);
}

}  // namespace mimo
