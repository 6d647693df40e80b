#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ahs/program.hpp"

// Program serialization. The canonical JSON schema ("ahs-program/1") and the
// Braket-AHS-shaped export document are specified byte-exactly in
// docs/formats.md; parse(serialize(p)) structurally equals p for every valid
// program. These are file formats only — no network I/O exists anywhere.

namespace ahs {

nlohmann::json program_to_json(const AhsProgram& p);
AhsProgram program_from_json(const nlohmann::json& j);

// Canonical text form: keys sorted, two-space indent, trailing newline.
std::string serialize_program(const AhsProgram& p);

// Throws ParseError carrying the offending location (byte offset for
// malformed JSON, JSON path for schema violations).
AhsProgram parse_program(std::string_view text);
AhsProgram load_program_file(const std::string& path);

// Export in the public Braket AHS program shape (setup.ahs_register +
// hamiltonian.drivingFields/localDetuning), positions in meters and
// magnitudes in rad/s, numeric leaves as shortest round-trip decimal strings.
std::string export_braket_compatible(const AhsProgram& p);

// FNV-1a 64 over the canonical serialization; artifacts embed the hex form.
std::uint64_t program_hash(const AhsProgram& p);
std::string program_hash_hex(const AhsProgram& p);

}  // namespace ahs
