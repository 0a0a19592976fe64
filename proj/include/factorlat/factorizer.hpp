#pragma once

#include <map>
#include <optional>
#include <set>

#include "factorlat/blocks.hpp"
#include "factorlat/kfield.hpp"

namespace factorlat {

enum class SymbolKind { Inert, SplitHalf, SplitHalfConj, Ramified };

struct IdealEntry {
  std::string id;
  uint64_t p = 0;
  SymbolKind kind = SymbolKind::Inert;
  GroupElement cls;
  int exponent = 1;
};

// Prime ideal factorization of (n): split p at exponent v gives two symbols
// q<p>, q<p>_bar with inverse classes; ramified p gives r<p> at exponent 2v;
// inert p gives p<p> with the identity class at exponent v.
struct IdealFactorization {
  Discriminant disc;
  AbelianGroup group;
  std::vector<IdealEntry> entries;
};

enum class ReportMode { Symbolic, Explicit };

struct FactorizationReport {
  uint64_t n = 0;
  int64_t disc = 0;
  int64_t eta = 0;
  ClassSequence sequence;
  std::vector<BlockPartition> partitions;
  std::set<int> lengths;
  ReportMode mode = ReportMode::Symbolic;
  // Explicit mode: one irreducible O_K element per block, products equal n
  // exactly after the residual unit is folded into the first element.
  std::vector<std::vector<KNumber>> explicit_factors;
  std::vector<KNumber> folded_units;  // audit trail, one per factorization
};

IdealFactorization ideal_factorization(uint64_t n, const FormClassGroup& cg,
                                       const std::map<uint64_t, int>* factored = nullptr);

ClassSequence class_sequence_of(const IdealFactorization& fact);

int64_t eta(uint64_t n, const FormClassGroup& cg, int cap = kDefaultEnumerationCap);

FactorizationReport enumerate_factorizations(uint64_t n, const FormClassGroup& cg, bool want_explicit,
                                             int cap = kDefaultEnumerationCap);

// eta(p^n) = 1 for m = 1 or ramified p, floor(n/m) + 1 otherwise, m the class
// order of the primes above p.
int64_t closed_form_prime_power(uint64_t p, int n, const FormClassGroup& cg);

// Count of partitions of k distinct symbols in one class of order m into
// blocks of size m: k!/((m!)^{k/m} (k/m)!); 0 when m does not divide k.
int64_t closed_form_distinct_same_class(int64_t k, int64_t m);

struct VerifyResult {
  bool ok = true;
  std::string reason;
};

// Independent certificate check of an explicit report: block minimality via
// the naive oracle, integrality, products equal n up to a unit, pairwise
// non-associate factorizations.
VerifyResult verify(const FactorizationReport& report, uint64_t n, const FormClassGroup& cg);

// Bulk eta / length-set computation with caching keyed on the class-multiset
// shape; factors n <= max_n through a smallest-prime-factor sieve.
class EtaSurveyor {
 public:
  EtaSurveyor(const FormClassGroup& cg, uint32_t max_n, int cap = kDefaultEnumerationCap);

  int64_t eta_of(uint32_t n);
  std::set<int> lengths_of(uint32_t n);

 private:
  using Shape = std::vector<std::pair<uint64_t, int>>;
  Shape shape_of(uint32_t n);
  ClassSequence sequence_for(const Shape& s);

  const FormClassGroup& cg_;
  int cap_;
  std::vector<uint32_t> spf_;
  std::map<uint64_t, std::pair<SymbolKind, GroupElement>> prime_cache_;
  std::map<Shape, int64_t> eta_cache_;
  std::map<Shape, std::set<int>> length_cache_;
};

}  // namespace factorlat
