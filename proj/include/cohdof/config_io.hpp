#pragma once

// JSON config documents:
//   {"type":"bc","M":2,"receivers":[{"N":1,"T":4},{"N":3,"T":24,"offset":0}]}
//   {"type":"mac","N":4,"transmitters":[{"M":3,"T":10},{"M":2,"T":10}]}
// with an optional "sim" block:
//   {"snr_db":[20,40,60],"trials":20000,"seed":1,"scheme":"bc-ps-d2","priority":[1,2]}
// Entity indices in documents are 1-based.

#include "cohdof/errors.hpp"
#include "cohdof/linksim.hpp"
#include "cohdof/model.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace cohdof {

struct SimBlock {
    SimConfig sim;
    std::optional<OrderedSubset> priority;
};

struct ConfigDoc {
    std::variant<BcConfig, MacConfig> channel;
    std::optional<SimBlock> sim;

    bool is_bc() const { return std::holds_alternative<BcConfig>(channel); }
    const BcConfig& bc() const { return std::get<BcConfig>(channel); }
    const MacConfig& mac() const { return std::get<MacConfig>(channel); }
};

namespace detail {

using nlohmann::json;

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidConfig(where + " must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw InvalidConfig(where + ": unknown field '" + k + "'");
}

inline Count get_count(const json& j, const char* key, const std::string& where, std::optional<Count> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw InvalidConfig(where + ": missing field '" + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidConfig(where + ": field '" + key + "' must be an integer");
    return v.get<Count>();
}

inline OrderedSubset parse_indices(const json& j, std::size_t entities, const std::string& where) {
    if (!j.is_array()) throw InvalidConfig(where + " must be an array of 1-based indices");
    std::vector<std::size_t> idx;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw InvalidConfig(where + " must contain integers");
        auto i = v.get<long long>();
        if (i < 1 || static_cast<std::size_t>(i) > entities) throw InvalidConfig(where + ": index out of range");
        idx.push_back(static_cast<std::size_t>(i - 1));
    }
    return OrderedSubset(idx);
}

inline SimScheme parse_scheme(const std::string& s) {
    if (s == "p2p") return SimScheme::P2P;
    if (s == "bc-ps-d1") return SimScheme::BcPsD1;
    if (s == "bc-ps-d2") return SimScheme::BcPsD2;
    if (s == "mac-pilot") return SimScheme::MacPilot;
    throw InvalidConfig("sim: unknown scheme '" + s + "'");
}

}  // namespace detail

inline ConfigDoc parse_config(const nlohmann::json& j) {
    using detail::get_count;
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw InvalidConfig("config needs a string field 'type' (\"bc\" or \"mac\")");
    const std::string type = j.at("type").get<std::string>();
    ConfigDoc doc;
    std::size_t entities = 0;
    if (type == "bc") {
        detail::only_keys(j, {"type", "M", "receivers", "sim"}, "config");
        BcConfig c;
        c.tx_antennas = get_count(j, "M", "config");
        if (!j.contains("receivers") || !j.at("receivers").is_array())
            throw InvalidConfig("config: 'receivers' must be an array");
        for (const auto& r : j.at("receivers")) {
            detail::only_keys(r, {"N", "T", "offset"}, "receiver");
            c.receivers.push_back({get_count(r, "N", "receiver"), get_count(r, "T", "receiver"),
                                   get_count(r, "offset", "receiver", 0)});
        }
        c.validate();
        entities = c.size();
        doc.channel = c;
    } else if (type == "mac") {
        detail::only_keys(j, {"type", "N", "transmitters", "sim"}, "config");
        MacConfig c;
        c.rx_antennas = get_count(j, "N", "config");
        if (!j.contains("transmitters") || !j.at("transmitters").is_array())
            throw InvalidConfig("config: 'transmitters' must be an array");
        for (const auto& t : j.at("transmitters")) {
            detail::only_keys(t, {"M", "T"}, "transmitter");
            c.transmitters.push_back({get_count(t, "M", "transmitter"), get_count(t, "T", "transmitter")});
        }
        c.validate();
        entities = c.size();
        doc.channel = c;
    } else {
        throw InvalidConfig("config: unknown type '" + type + "'");
    }

    if (j.contains("sim")) {
        const auto& s = j.at("sim");
        detail::only_keys(s, {"snr_db", "trials", "seed", "scheme", "priority"}, "sim");
        SimBlock b;
        if (!s.contains("snr_db") || !s.at("snr_db").is_array()) throw InvalidConfig("sim: 'snr_db' must be an array");
        for (const auto& v : s.at("snr_db")) {
            if (!v.is_number()) throw InvalidConfig("sim: 'snr_db' must contain numbers");
            b.sim.snr_db.push_back(v.get<double>());
        }
        const Count trials = get_count(s, "trials", "sim", 20000);
        if (trials < 1) throw InvalidConfig("sim: 'trials' must be >= 1");
        b.sim.trials = static_cast<std::uint64_t>(trials);
        if (s.contains("seed")) {
            if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer())
                throw InvalidConfig("sim: 'seed' must be an integer");
            b.sim.seed = s.at("seed").get<std::uint64_t>();
        }
        std::string scheme = doc.is_bc() ? "bc-ps-d2" : "mac-pilot";
        if (s.contains("scheme")) {
            if (!s.at("scheme").is_string()) throw InvalidConfig("sim: 'scheme' must be a string");
            scheme = s.at("scheme").get<std::string>();
        }
        b.sim.scheme = detail::parse_scheme(scheme);
        if (s.contains("priority")) b.priority = detail::parse_indices(s.at("priority"), entities, "sim.priority");
        b.sim.validate();
        doc.sim = b;
    }
    return doc;
}

inline ConfigDoc parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline ConfigDoc load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Simulation target derived from a config document. For P2P the first entity's link is used.
inline SimTarget sim_target(const ConfigDoc& doc) {
    SimTarget t;
    if (doc.is_bc()) {
        t.bc = doc.bc();
        t.m = t.bc.tx_antennas;
        t.n = t.bc.receivers.front().antennas;
        t.t = t.bc.receivers.front().coherence;
    } else {
        t.mac = doc.mac();
        t.m = t.mac.transmitters.front().antennas;
        t.n = t.mac.rx_antennas;
        t.t = t.mac.transmitters.front().coherence;
        std::vector<std::size_t> all(t.mac.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        t.priority = OrderedSubset(all);
    }
    if (doc.sim && doc.sim->priority) t.priority = *doc.sim->priority;
    return t;
}

}  // namespace cohdof
