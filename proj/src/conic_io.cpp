#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <sstream>

#include "volmom/conic.hpp"
#include "volmom/format.hpp"

namespace volmom::conic {

namespace {

bool same_entry(const SymEntry& a, const SymEntry& b) {
  return a.row == b.row && a.col == b.col && a.value == b.value;
}

bool same_entries(const std::vector<SymEntry>& a, const std::vector<SymEntry>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), same_entry);
}

const std::vector<SymEntry>& coeffs_or_empty(const Block& b, std::size_t i) {
  static const std::vector<SymEntry> empty;
  return i < b.coefficients.size() ? b.coefficients[i] : empty;
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error("malformed number '" + tok + "'");
  return v;
}

}  // namespace

bool Block::operator==(const Block& o) const {
  if (kind != o.kind || size != o.size || !same_entries(constant, o.constant)) return false;
  const std::size_t n = std::max(coefficients.size(), o.coefficients.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!same_entries(coeffs_or_empty(*this, i), coeffs_or_empty(o, i))) return false;
  return true;
}

bool StandardConicProblem::operator==(const StandardConicProblem& o) const {
  return num_vars == o.num_vars && objective == o.objective && blocks == o.blocks;
}

void StandardConicProblem::validate() const {
  if (objective.size() != num_vars)
    throw Error("conic problem: objective length " + std::to_string(objective.size()) +
                " differs from variable count " + std::to_string(num_vars));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    if (blk.size == 0) throw Error("conic problem: empty block " + std::to_string(b));
    if (blk.coefficients.size() > num_vars)
      throw Error("conic problem: block " + std::to_string(b) + " references too many variables");
    auto check = [&](const SymEntry& e) {
      if (e.row < 0 || e.col < 0 || static_cast<std::size_t>(e.col) >= blk.size || e.row > e.col)
        throw Error("conic problem: entry outside upper triangle in block " + std::to_string(b));
      if (blk.kind == ConeKind::Nonneg && e.row != e.col)
        throw Error("conic problem: off-diagonal entry in nonnegative block " + std::to_string(b));
      if (!std::isfinite(e.value)) throw Error("conic problem: non-finite coefficient");
    };
    std::for_each(blk.constant.begin(), blk.constant.end(), check);
    for (const auto& f : blk.coefficients) std::for_each(f.begin(), f.end(), check);
  }
  for (double c : objective)
    if (!std::isfinite(c)) throw Error("conic problem: non-finite objective");
}

std::string export_sdpa(const StandardConicProblem& p) {
  p.validate();
  std::ostringstream os;
  os << p.num_vars << "\n" << p.blocks.size() << "\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    if (b) os << " ";
    const auto sz = static_cast<long long>(p.blocks[b].size);
    os << (p.blocks[b].kind == ConeKind::PSD ? sz : -sz);
  }
  os << "\n";
  for (std::size_t i = 0; i < p.num_vars; ++i) {
    if (i) os << " ";
    os << format_double(-p.objective[i]);
  }
  os << "\n";
  auto emit = [&](std::size_t matno, std::size_t blk, const std::vector<SymEntry>& f, double sign) {
    for (const auto& e : f)
      os << matno << " " << blk + 1 << " " << e.row + 1 << " " << e.col + 1 << " "
         << format_double(sign * e.value) << "\n";
  };
  for (std::size_t b = 0; b < p.blocks.size(); ++b) emit(0, b, p.blocks[b].constant, -1.0);
  for (std::size_t i = 0; i < p.num_vars; ++i)
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
      emit(i + 1, b, coeffs_or_empty(p.blocks[b], i), 1.0);
  return os.str();
}

StandardConicProblem import_sdpa(std::istream& is) {
  // Tokenize ignoring comment lines and the punctuation SDPA tolerates.
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && (line[0] == '"' || line[0] == '*')) continue;
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    lines.push_back(line);
  }
  std::istringstream ts([&] {
    std::string all;
    for (const auto& l : lines) all += l + "\n";
    return all;
  }());
  auto next = [&]() {
    std::string tok;
    if (!(ts >> tok)) throw Error("sdpa: unexpected end of file");
    return tok;
  };
  StandardConicProblem p;
  p.num_vars = std::stoul(next());
  const std::size_t nblocks = std::stoul(next());
  p.blocks.resize(nblocks);
  for (auto& b : p.blocks) {
    const long long sz = std::stoll(next());
    b.kind = sz < 0 ? ConeKind::Nonneg : ConeKind::PSD;
    b.size = static_cast<std::size_t>(sz < 0 ? -sz : sz);
    b.coefficients.resize(p.num_vars);
  }
  p.objective.resize(p.num_vars);
  for (auto& c : p.objective) c = -parse_double(next());
  std::string tok;
  while (ts >> tok) {
    const std::size_t matno = std::stoul(tok);
    const std::size_t blk = std::stoul(next());
    const int i = std::stoi(next());
    const int j = std::stoi(next());
    const double v = parse_double(next());
    if (blk < 1 || blk > nblocks || matno > p.num_vars) throw Error("sdpa: index out of range");
    SymEntry e{std::min(i, j) - 1, std::max(i, j) - 1, v};
    auto& b = p.blocks[blk - 1];
    if (matno == 0) {
      e.value = -v;
      b.constant.push_back(e);
    } else {
      b.coefficients[matno - 1].push_back(e);
    }
  }
  p.validate();
  return p;
}

namespace {

std::string numbered(char prefix, std::size_t k) {
  std::ostringstream os;
  os << prefix << std::setw(7) << std::setfill('0') << k;
  return os.str();
}

std::string fixed_line(const std::string& f1, const std::string& f2, const std::string& f3,
                       const std::string& f4) {
  // Fields at columns 2, 5, 15, 25 (1-based).
  std::ostringstream os;
  os << " " << std::left << std::setw(2) << f1 << " " << std::setw(8) << f2;
  if (!f3.empty() || !f4.empty()) os << "  " << std::setw(8) << f3 << "  " << f4;
  std::string s = os.str();
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

std::string export_mps(const StandardConicProblem& p) {
  p.validate();
  std::vector<std::size_t> offset;
  std::size_t rows = 0;
  for (const auto& b : p.blocks) {
    if (b.kind != ConeKind::Nonneg) throw Error("mps export: PSD blocks cannot be written as MPS");
    offset.push_back(rows);
    rows += b.size;
  }
  std::ostringstream os;
  os << "NAME          VOLMOM\n";
  os << "* VOLMOM-BLOCKS";
  for (const auto& b : p.blocks) os << " " << b.size;
  os << "\n";
  os << "ROWS\n" << fixed_line("N", "COST", "", "") << "\n";
  for (std::size_t r = 0; r < rows; ++r) os << fixed_line("G", numbered('R', r + 1), "", "") << "\n";
  os << "COLUMNS\n";
  for (std::size_t i = 0; i < p.num_vars; ++i) {
    const std::string col = numbered('Y', i + 1);
    if (p.objective[i] != 0.0)
      os << fixed_line("", col, "COST", format_double(-p.objective[i])) << "\n";
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
      for (const auto& e : coeffs_or_empty(p.blocks[b], i))
        os << fixed_line("", col, numbered('R', offset[b] + e.row + 1), format_double(e.value))
           << "\n";
  }
  os << "RHS\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (const auto& e : p.blocks[b].constant)
      os << fixed_line("", "RHS", numbered('R', offset[b] + e.row + 1), format_double(-e.value))
         << "\n";
  os << "BOUNDS\n";
  for (std::size_t i = 0; i < p.num_vars; ++i)
    os << fixed_line("FR", "BND", numbered('Y', i + 1), "") << "\n";
  os << "ENDATA\n";
  return os.str();
}

StandardConicProblem import_mps(std::istream& is) {
  std::string line, section;
  std::vector<std::size_t> sizes;
  std::map<std::string, std::size_t> row_index;
  std::map<std::string, std::size_t> col_index;
  std::vector<std::tuple<std::size_t, std::string, double>> col_entries;
  std::vector<std::pair<std::string, double>> rhs_entries;
  std::vector<std::pair<std::size_t, double>> cost_entries;
  std::string cost_row;
  // Columns named Y<digits> keep their number; anything else is numbered by
  // first appearance after them.
  auto col_of = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    std::size_t idx = 0;
    const bool numeric = name.size() > 1 && name[0] == 'Y' &&
                         std::all_of(name.begin() + 1, name.end(), ::isdigit);
    idx = numeric ? std::stoul(name.substr(1)) - 1 : 1000000000 + col_index.size();
    col_index.emplace(name, idx);
    return idx;
  };
  while (std::getline(is, line)) {
    if (line.rfind("* VOLMOM-BLOCKS", 0) == 0) {
      std::istringstream ss(line.substr(15));
      std::size_t v;
      while (ss >> v) sizes.push_back(v);
      continue;
    }
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ') {
      section = tok[0];
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "ROWS") {
      if (tok.size() != 2) throw Error("mps: malformed ROWS line");
      if (tok[0] == "N") {
        cost_row = tok[1];
      } else if (tok[0] == "G") {
        const std::size_t k = row_index.size();
        row_index.emplace(tok[1], k);
      } else {
        throw Error("mps: only G rows are supported");
      }
    } else if (section == "COLUMNS") {
      if (tok.size() != 3 && tok.size() != 5) throw Error("mps: malformed COLUMNS line");
      const std::size_t c = col_of(tok[0]);
      for (std::size_t t = 1; t + 1 < tok.size(); t += 2) {
        const double v = parse_double(tok[t + 1]);
        if (tok[t] == cost_row)
          cost_entries.emplace_back(c, v);
        else
          col_entries.emplace_back(c, tok[t], v);
      }
    } else if (section == "RHS") {
      for (std::size_t t = 1; t + 1 < tok.size(); t += 2)
        rhs_entries.emplace_back(tok[t], parse_double(tok[t + 1]));
    } else if (section == "BOUNDS") {
      if (tok.size() < 3 || tok[0] != "FR") throw Error("mps: only FR bounds are supported");
      col_of(tok[2]);
    }
  }
  const std::size_t rows = row_index.size();
  if (sizes.empty()) sizes.push_back(rows);
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  if (total != rows) throw Error("mps: block sizes do not cover the rows");

  // Compact the column numbering.
  {
    std::vector<std::pair<std::size_t, std::string>> order;
    for (const auto& [name, idx] : col_index) order.emplace_back(idx, name);
    std::sort(order.begin(), order.end());
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t k = 0; k < order.size(); ++k) remap[order[k].first] = k;
    for (auto& [c, name, v] : col_entries) c = remap.at(c);
    for (auto& [c, v] : cost_entries) c = remap.at(c);
  }
  StandardConicProblem p;
  p.num_vars = col_index.size();
  p.objective.assign(p.num_vars, 0.0);
  for (const auto& [c, v] : cost_entries) p.objective[c] = -v;
  std::vector<std::size_t> block_of(rows), local(rows);
  {
    std::size_t r = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b)
      for (std::size_t k = 0; k < sizes[b]; ++k, ++r) {
        block_of[r] = b;
        local[r] = k;
      }
  }
  p.blocks.resize(sizes.size());
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    p.blocks[b].kind = ConeKind::Nonneg;
    p.blocks[b].size = sizes[b];
    p.blocks[b].coefficients.resize(p.num_vars);
  }
  auto row_of = [&](const std::string& name) {
    auto it = row_index.find(name);
    if (it == row_index.end()) throw Error("mps: unknown row " + name);
    return it->second;
  };
  for (const auto& [c, name, v] : col_entries) {
    const std::size_t r = row_of(name);
    const int k = static_cast<int>(local[r]);
    p.blocks[block_of[r]].coefficients[c].push_back({k, k, v});
  }
  for (const auto& [name, v] : rhs_entries) {
    const std::size_t r = row_of(name);
    const int k = static_cast<int>(local[r]);
    p.blocks[block_of[r]].constant.push_back({k, k, -v});
  }
  p.validate();
  return p;
}

}  // namespace volmom::conic
