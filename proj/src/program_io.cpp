#include "ahs/program_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "format_util.hpp"

namespace ahs {

namespace {

using nlohmann::json;
using detail::format_double;

constexpr std::string_view kSchemaId = "ahs-program/1";

json waveform_to_json(const Waveform& w) {
    return json{{"times_s", w.times_s()}, {"values", w.values()}};
}

const json& require(const json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError("missing \"" + std::string(key) + "\" at " + where);
    }
    return *it;
}

std::vector<double> number_array(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ParseError("expected an array at " + where);
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw ParseError("expected numbers at " + where);
        }
        out.push_back(v.get<double>());
    }
    return out;
}

Waveform waveform_from_json(const json& j, const std::string& where) {
    try {
        return Waveform(number_array(require(j, "times_s", where), where + ".times_s"),
                        number_array(require(j, "values", where), where + ".values"));
    } catch (const ParseError&) {
        throw;
    } catch (const AhsError& e) {
        throw ParseError(std::string(e.what()) + " at " + where);
    }
}

}  // namespace

json program_to_json(const AhsProgram& p) {
    json sites = json::array();
    for (const auto& s : p.reg.sites) {
        sites.push_back(json::array({s.x_um, s.y_um}));
    }
    json j;
    j["schema"] = kSchemaId;
    j["register"] = json{{"sites", std::move(sites)}};
    j["drive"] = json{{"omega", waveform_to_json(p.drive.omega)},
                      {"phi", waveform_to_json(p.drive.phi)},
                      {"delta_global", waveform_to_json(p.drive.delta_global)}};
    if (p.shift) {
        j["shift"] = json{{"delta_local", waveform_to_json(p.shift->delta_local)},
                          {"pattern", p.shift->pattern}};
    } else {
        j["shift"] = nullptr;
    }
    j["duration_s"] = p.duration_s;
    return j;
}

AhsProgram program_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("program document must be a JSON object");
    }
    const auto& schema = require(j, "schema", "$");
    if (!schema.is_string() || schema.get<std::string>() != kSchemaId) {
        throw ParseError("unsupported schema at $.schema, expected \"" +
                         std::string(kSchemaId) + "\"");
    }

    const auto& reg = require(j, "register", "$");
    const auto& sites_json = require(reg, "sites", "$.register");
    if (!sites_json.is_array() || sites_json.empty()) {
        throw ParseError("expected a non-empty array at $.register.sites");
    }
    Register reg_out;
    for (std::size_t i = 0; i < sites_json.size(); ++i) {
        const auto& s = sites_json[i];
        if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
            throw ParseError("expected [x_um, y_um] at $.register.sites[" +
                             std::to_string(i) + "]");
        }
        reg_out.sites.push_back(Position{s[0].get<double>(), s[1].get<double>()});
    }

    const auto& drive = require(j, "drive", "$");
    DrivingField drive_out(waveform_from_json(require(drive, "omega", "$.drive"),
                                              "$.drive.omega"),
                           waveform_from_json(require(drive, "phi", "$.drive"),
                                              "$.drive.phi"),
                           waveform_from_json(require(drive, "delta_global", "$.drive"),
                                              "$.drive.delta_global"));

    std::optional<ShiftingField> shift_out;
    const auto shift_it = j.find("shift");
    if (shift_it != j.end() && !shift_it->is_null()) {
        try {
            shift_out.emplace(
                waveform_from_json(require(*shift_it, "delta_local", "$.shift"),
                                   "$.shift.delta_local"),
                number_array(require(*shift_it, "pattern", "$.shift"), "$.shift.pattern"));
        } catch (const ParseError&) {
            throw;
        } catch (const AhsError& e) {
            throw ParseError(std::string(e.what()) + " at $.shift");
        }
    }

    const auto& duration = require(j, "duration_s", "$");
    if (!duration.is_number()) {
        throw ParseError("expected a number at $.duration_s");
    }

    return AhsProgram{std::move(reg_out), std::move(drive_out), std::move(shift_out),
                      duration.get<double>()};
}

std::string serialize_program(const AhsProgram& p) {
    return program_to_json(p).dump(2) + "\n";
}

AhsProgram parse_program(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());  // nlohmann reports the byte offset
    }
    return program_from_json(j);
}

AhsProgram load_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open program file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_program(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string export_braket_compatible(const AhsProgram& p) {
    const auto series = [](const Waveform& w, double value_scale) {
        json times = json::array(), values = json::array();
        for (double t : w.times_s()) times.push_back(format_double(t));
        for (double v : w.values()) values.push_back(format_double(v * value_scale));
        return json{{"times", std::move(times)}, {"values", std::move(values)}};
    };

    json sites = json::array();
    json filling = json::array();
    for (const auto& s : p.reg.sites) {
        sites.push_back(json::array(
            {format_double(s.x_um * 1e-6), format_double(s.y_um * 1e-6)}));
        filling.push_back(1);
    }

    json doc;
    doc["braketSchemaHeader"] = json{{"name", "braket.ir.ahs.program"}, {"version", "1"}};
    doc["setup"] = json{{"ahs_register", json{{"sites", std::move(sites)},
                                              {"filling", std::move(filling)}}}};
    json driving;
    driving["amplitude"] = json{{"time_series", series(p.drive.omega, 1.0)},
                                {"pattern", "uniform"}};
    driving["phase"] = json{{"time_series", series(p.drive.phi, 1.0)},
                            {"pattern", "uniform"}};
    driving["detuning"] = json{{"time_series", series(p.drive.delta_global, 1.0)},
                               {"pattern", "uniform"}};
    doc["hamiltonian"]["drivingFields"] = json::array({std::move(driving)});

    json local = json::array();
    if (p.shift) {
        json pattern = json::array();
        for (double h : p.shift->pattern) pattern.push_back(format_double(h));
        local.push_back(json{{"magnitude",
                              json{{"time_series", series(p.shift->delta_local, 1.0)},
                                   {"pattern", std::move(pattern)}}}});
    }
    doc["hamiltonian"]["localDetuning"] = std::move(local);
    return doc.dump(2) + "\n";
}

std::uint64_t program_hash(const AhsProgram& p) {
    const std::string text = serialize_program(p);
    std::uint64_t hash = 0xCBF29CE484222325ull;  // FNV-1a 64
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

std::string program_hash_hex(const AhsProgram& p) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(program_hash(p)));
    return std::string(buf);
}

}  // namespace ahs
