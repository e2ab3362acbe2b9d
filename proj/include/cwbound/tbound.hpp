#pragma once

// Upper bounds on T(w1, n1, w2, n2, d), the maximum size of a
// doubly-constant-weight code: w1 ones among the first n1 coordinates, w2
// ones among the last n2, minimum distance d.

#include "cwbound/rational.hpp"

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cwbound {

struct DoublyParams {
  int w1 = 0;
  int n1 = 0;
  int w2 = 0;
  int n2 = 0;
  int d = 2;

  /// Validates 0 <= wi <= ni and d >= 1, and bumps odd d to d + 1 (T is
  /// unchanged by that). Throws std::invalid_argument.
  static DoublyParams make(int w1, int n1, int w2, int n2, int d);

  auto operator<=>(const DoublyParams&) const = default;
};

std::string to_string(const DoublyParams& p);

/// Complements each block to weight min(wi, ni - wi), then orders the two
/// blocks by (weight, length). T is invariant under both moves.
DoublyParams canonicalize(const DoublyParams& p);

/// T exactly, when a closed form applies: d = 2, 2w1 + 2w2 < d,
/// 2w1 + 2w2 = d, or an empty block reducing to a closed-form A(n2, d, w2).
std::optional<Integer> exact_t(const DoublyParams& canonical);

struct TEntry {
  Integer bound;
  std::string provenance;
};

/// Upper bounds on T keyed by canonical parameters. Immutable once loaded.
class TBoundTable {
 public:
  TBoundTable() = default;

  /// Parses `w1,n1,w2,n2,d,bound,provenance` records. Blank lines and lines
  /// starting with '#' are skipped. Throws TableError on malformed records,
  /// non-positive bounds, or two records with the same canonical key.
  static TBoundTable parse(std::istream& in, const std::string& source_name);
  static TBoundTable load(const std::string& path);

  /// The table shipped with the library.
  static const TBoundTable& seed();

  /// Adds `other`'s entries; on a shared key the smaller bound wins.
  void merge(const TBoundTable& other);

  /// Inserts or tightens one entry (key is canonicalized).
  void insert(const DoublyParams& p, const Integer& bound, const std::string& provenance);

  const TEntry* find(const DoublyParams& canonical) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<DoublyParams, TEntry>& entries() const { return entries_; }

 private:
  std::map<DoublyParams, TEntry> entries_;
};

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which source supplied a T bound.
enum class TSource { Exact, Table, ContainmentA, Product };

std::string to_string(TSource s);

struct TLookup {
  DoublyParams key;  // canonical
  Integer bound;
  TSource source = TSource::Product;
  std::string provenance;
};

/// Smallest available upper bound on T(p): the exact value, the table entry,
/// T <= A(n1+n2, d, w1+w2) when that A has a closed form, and
/// T <= C(n1,w1) C(n2,w2). Never fails; the result may be weak. A table entry
/// that disagrees with an exact value is reported on std::clog.
TLookup lookup_t(const DoublyParams& p, const TBoundTable& table);

}  // namespace cwbound
