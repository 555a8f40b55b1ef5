#include "qsat/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace qsat {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, std::uint32_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw DimacsError("expected an integer, got '" + std::string(tok) + "'", line);
  }
  return v;
}

}  // namespace

SatInstance parse_dimacs(std::string_view text) {
  std::uint32_t line_no = 0;
  bool have_header = false;
  long long n_vars = 0, n_clauses = 0;
  std::optional<std::uint64_t> ns, seed;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  std::uint32_t clause_start_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto toks = split_ws(line);
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (toks[0] == "c") {
      if (toks.size() == 3 && toks[1] == "ns") ns = parse_int(toks[2], line_no);
      if (toks.size() == 3 && toks[1] == "seed")
        seed = static_cast<std::uint64_t>(parse_int(toks[2], line_no));
      if (eol == text.size()) break;
      continue;
    }
    if (toks[0] == "p") {
      if (have_header) throw DimacsError("duplicate 'p' header", line_no);
      if (toks.size() != 4 || toks[1] != "cnf") {
        throw DimacsError("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
      }
      n_vars = parse_int(toks[2], line_no);
      n_clauses = parse_int(toks[3], line_no);
      if (n_vars < 0 || n_vars > kMaxVariables) {
        throw DimacsError("variable count out of supported range [0, " +
                              std::to_string(kMaxVariables) + "]",
                          line_no);
      }
      if (n_clauses < 0) throw DimacsError("negative clause count", line_no);
      have_header = true;
      if (eol == text.size()) break;
      continue;
    }
    if (!have_header) throw DimacsError("clause data before 'p cnf' header", line_no);

    for (std::string_view tok : toks) {
      long long lit = parse_int(tok, line_no);
      if (lit == 0) {
        if (current.empty()) {
          throw DimacsError("clause of length 0", clause_start_line ? clause_start_line : line_no);
        }
        if (current.size() > 3) {
          throw DimacsError("clause of length " + std::to_string(current.size()) +
                                " (at most 3 supported)",
                            clause_start_line);
        }
        clauses.emplace_back(std::span<const Literal>(current.data(), current.size()));
        current.clear();
        clause_start_line = 0;
        continue;
      }
      long long var = lit < 0 ? -lit : lit;
      if (var > n_vars) {
        throw DimacsError("literal " + std::string(tok) + " out of range for " +
                              std::to_string(n_vars) + " variables",
                          line_no);
      }
      if (current.empty()) clause_start_line = line_no;
      if (current.size() >= 3) {
        throw DimacsError("clause of length > 3 (at most 3 supported)", clause_start_line);
      }
      current.push_back(Literal{static_cast<std::uint32_t>(var - 1), lit < 0});
    }
    if (eol == text.size()) break;
  }

  if (!have_header) throw DimacsError("missing 'p cnf' header", line_no);
  if (!current.empty()) throw DimacsError("unterminated clause (missing trailing 0)", line_no);
  if (static_cast<long long>(clauses.size()) != n_clauses) {
    throw DimacsError("header promises " + std::to_string(n_clauses) + " clauses, found " +
                          std::to_string(clauses.size()),
                      line_no);
  }

  SatInstance instance(static_cast<std::uint32_t>(n_vars), std::move(clauses));
  if (ns) instance.cache_solution_count(*ns);
  if (seed) instance.set_generator_seed(*seed);
  return instance;
}

std::string emit_dimacs(const SatInstance& instance) {
  std::ostringstream out;
  if (auto s = instance.generator_seed()) out << "c seed " << *s << "\n";
  if (auto k = instance.solution_count()) out << "c ns " << *k << "\n";
  out << "p cnf " << instance.num_vars() << " " << instance.num_clauses() << "\n";
  for (const Clause& c : instance.clauses()) {
    for (const Literal& l : c.literals()) {
      out << (l.negated ? -static_cast<long long>(l.var + 1)
                        : static_cast<long long>(l.var + 1))
          << " ";
    }
    out << "0\n";
  }
  return out.str();
}

SatInstance read_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

void write_dimacs_file(const SatInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << emit_dimacs(instance);
}

}  // namespace qsat
