#include "cwbound/tbound.hpp"

#include "cwbound/combinatorics.hpp"
#include "cwbound/params.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cwbound {

DoublyParams DoublyParams::make(int w1, int n1, int w2, int n2, int d) {
  if (n1 < 0 || n2 < 0 || w1 < 0 || w2 < 0 || w1 > n1 || w2 > n2 || d < 1) {
    throw std::invalid_argument("malformed doubly-constant-weight parameters " +
                                to_string(DoublyParams{w1, n1, w2, n2, d}));
  }
  if (d % 2 != 0) ++d;
  return DoublyParams{w1, n1, w2, n2, d};
}

std::string to_string(const DoublyParams& p) {
  return "T(" + std::to_string(p.w1) + "," + std::to_string(p.n1) + "," + std::to_string(p.w2) + "," +
         std::to_string(p.n2) + "," + std::to_string(p.d) + ")";
}

DoublyParams canonicalize(const DoublyParams& p) {
  DoublyParams c = p;
  c.w1 = std::min(p.w1, p.n1 - p.w1);
  c.w2 = std::min(p.w2, p.n2 - p.w2);
  if (std::pair(c.w2, c.n2) < std::pair(c.w1, c.n1)) {
    std::swap(c.w1, c.w2);
    std::swap(c.n1, c.n2);
  }
  return c;
}

std::optional<Integer> exact_t(const DoublyParams& p) {
  if (p.d <= 2) return binomial(p.n1, p.w1) * binomial(p.n2, p.w2);
  const int span = 2 * p.w1 + 2 * p.w2;
  if (span < p.d) return Integer(1);
  if (p.w1 == 0) {
    // Canonical order puts any weight-0 block first.
    return exact_constant_weight(p.n2, p.d, p.w2);
  }
  if (span == p.d) return Integer(std::min(p.n1 / p.w1, p.n2 / p.w2));
  return std::nullopt;
}

std::string to_string(TSource s) {
  switch (s) {
    case TSource::Exact: return "exact";
    case TSource::Table: return "table";
    case TSource::ContainmentA: return "containment-A";
    case TSource::Product: return "product";
  }
  return "?";
}

namespace {

std::vector<std::string> split_record(const std::string& line) {
  // The seventh field (provenance) keeps any further commas.
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (fields.size() < 6) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) break;
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_small(const std::string& field, const std::string& where) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw TableError(where + ": bad integer field '" + field + "'");
  }
}

}  // namespace

TBoundTable TBoundTable::parse(std::istream& in, const std::string& source_name) {
  TBoundTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    auto fields = split_record(t);
    if (fields.size() != 7) throw TableError(where + ": expected 7 comma-separated fields");
    for (auto& f : fields) f = trim(f);
    DoublyParams key;
    try {
      key = canonicalize(DoublyParams::make(parse_small(fields[0], where), parse_small(fields[1], where),
                                            parse_small(fields[2], where), parse_small(fields[3], where),
                                            parse_small(fields[4], where)));
    } catch (const std::invalid_argument& e) {
      throw TableError(where + ": " + e.what());
    }
    Integer bound;
    try {
      bound = parse_integer(fields[5]);
    } catch (const std::invalid_argument&) {
      throw TableError(where + ": bad bound '" + fields[5] + "'");
    }
    if (bound < 1) throw TableError(where + ": bound must be >= 1");
    if (table.entries_.count(key) != 0) {
      throw TableError(where + ": duplicate canonical key " + to_string(key));
    }
    table.entries_.emplace(key, TEntry{bound, fields[6]});
  }
  return table;
}

TBoundTable TBoundTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open T-bound table '" + path + "'");
  return parse(in, path);
}

void TBoundTable::merge(const TBoundTable& other) {
  for (const auto& [key, entry] : other.entries_) insert(key, entry.bound, entry.provenance);
}

void TBoundTable::insert(const DoublyParams& p, const Integer& bound, const std::string& provenance) {
  const DoublyParams key = canonicalize(p);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, TEntry{bound, provenance});
  } else if (bound < it->second.bound) {
    it->second = TEntry{bound, provenance};
  }
}

const TEntry* TBoundTable::find(const DoublyParams& canonical) const {
  auto it = entries_.find(canonical);
  return it == entries_.end() ? nullptr : &it->second;
}

TLookup lookup_t(const DoublyParams& p, const TBoundTable& table) {
  const DoublyParams key = canonicalize(p);
  TLookup best{key, binomial(key.n1, key.w1) * binomial(key.n2, key.w2), TSource::Product, "C(n1,w1)C(n2,w2)"};
  auto offer = [&best](const Integer& bound, TSource source, std::string provenance) {
    if (bound < best.bound) {
      best.bound = bound;
      best.source = source;
      best.provenance = std::move(provenance);
    }
  };

  if (key.n1 + key.n2 >= 1) {
    if (auto a = exact_constant_weight(key.n1 + key.n2, key.d, key.w1 + key.w2)) {
      offer(*a, TSource::ContainmentA, "A(n1+n2,d,w1+w2)");
    }
  }
  const auto exact = exact_t(key);
  const TEntry* entry = table.find(key);
  if (exact && entry && entry->bound != *exact) {
    std::clog << "warning: table entry " << to_string(key) << " <= " << entry->bound.get_str()
              << " (" << entry->provenance << ") disagrees with exact value " << exact->get_str() << "\n";
  }
  if (entry) offer(entry->bound, TSource::Table, entry->provenance);
  // Exact wins ties so derivations name the identity rather than the table.
  if (exact && *exact <= best.bound) {
    best.bound = *exact;
    best.source = TSource::Exact;
    best.provenance = "identity";
  }
  return best;
}

}  // namespace cwbound
