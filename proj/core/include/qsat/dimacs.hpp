#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qsat/sat.hpp"

namespace qsat {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(const std::string& what, std::uint32_t line)
      : std::runtime_error("dimacs:" + std::to_string(line) + ": " + what), line(line) {}
  std::uint32_t line;
};

/// Parses DIMACS CNF. Extension comments recognized:
///   c ns <k>     cached solution count
///   c seed <s>   generator seed
/// The canonical flag is recomputed from the parsed clauses. Clauses of
/// length 0 or above 3 are rejected.
SatInstance parse_dimacs(std::string_view text);

/// Emit normal form: header, `c ns` / `c seed` when known, one clause per
/// line with 1-based signed variables. emit(parse(emit(x))) == emit(x).
std::string emit_dimacs(const SatInstance& instance);

SatInstance read_dimacs_file(const std::filesystem::path& path);
void write_dimacs_file(const SatInstance& instance, const std::filesystem::path& path);

}  // namespace qsat
