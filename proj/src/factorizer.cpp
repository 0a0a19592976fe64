#include "factorlat/factorizer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "factorlat/errors.hpp"
#include "factorlat/intmath.hpp"

namespace factorlat {

IdealFactorization ideal_factorization(uint64_t n, const FormClassGroup& cg,
                                       const std::map<uint64_t, int>* factored) {
  if (n <= 1) fail(ErrorKind::InvalidInput, "n must exceed 1");
  std::map<uint64_t, int> owned;
  if (!factored) {
    owned = factorize(n);
    factored = &owned;
  }
  IdealFactorization fact;
  fact.disc = cg.disc;
  fact.group = cg.group;
  for (auto& [p, v] : *factored) {
    SplittingType st = splitting_type(p, cg.disc);
    std::string ps = std::to_string(p);
    switch (st) {
      case SplittingType::Inert:
        fact.entries.push_back(IdealEntry{"p" + ps, p, SymbolKind::Inert, identity(cg.group), v});
        break;
      case SplittingType::Ramified: {
        GroupElement cls = class_of_prime(p, cg);
        fact.entries.push_back(IdealEntry{"r" + ps, p, SymbolKind::Ramified, cls, 2 * v});
        break;
      }
      case SplittingType::Split: {
        GroupElement cls = class_of_prime(p, cg);
        fact.entries.push_back(IdealEntry{"q" + ps, p, SymbolKind::SplitHalf, cls, v});
        fact.entries.push_back(
            IdealEntry{"q" + ps + "_bar", p, SymbolKind::SplitHalfConj, neg(cg.group, cls), v});
        break;
      }
    }
  }
  return fact;
}

ClassSequence class_sequence_of(const IdealFactorization& fact) {
  std::vector<SequenceEntry> entries;
  for (auto& e : fact.entries) entries.push_back(SequenceEntry{e.id, e.cls, e.exponent});
  return make_sequence(fact.group, std::move(entries));
}

int64_t eta(uint64_t n, const FormClassGroup& cg, int cap) {
  return count_partitions(class_sequence_of(ideal_factorization(n, cg)), cap);
}

namespace {

// One O_L element per symbol. Ramified and split symbols share the form
// representation of their prime; the conjugate symbol takes the minus sign.
std::map<std::string, GradedNumber> symbol_elements(const IdealFactorization& fact,
                                                    const FormClassGroup& cg) {
  std::map<std::string, GradedNumber> out;
  for (auto& e : fact.entries) {
    if (e.kind == SymbolKind::Inert) {
      out[e.id] = GradedNumber{KNumber{Rat(static_cast<int64_t>(e.p)), 0}, 1};
      continue;
    }
    GroupElement key = e.cls;  // order <= 2, so the conjugate class is equal
    if (e.kind == SymbolKind::SplitHalfConj) key = neg(cg.group, key);
    auto it = cg.ambiguous.find(key);
    if (it == cg.ambiguous.end())
      fail(ErrorKind::Internal, "no ambiguous representative for class " + to_string(key));
    const QuadForm& f = it->second;
    auto xy = represent(f, e.p, cg.disc);
    if (!xy) fail(ErrorKind::Internal, to_string(f) + " does not represent " + std::to_string(e.p));
    Sign s = e.kind == SymbolKind::SplitHalfConj ? Sign::Minus : Sign::Plus;
    out[e.id] = beta_of(cg.disc, f, xy->first, xy->second, s);
  }
  return out;
}

// Multiply a block's symbols and land back in O_K. A trivial-class product
// ends with radicand 1, or with the field radicand |m| in which case it is i
// times an element of K and sqrt(m)/d recovers the K representative.
KNumber block_element(const FormClassGroup& cg, const ClassSequence& seq, const Block& b,
                      const std::map<std::string, GradedNumber>& elems) {
  GradedNumber acc{KNumber{1, 0}, 1};
  for (auto& [idx, cnt] : b.items) {
    const GradedNumber& g = elems.at(seq.entries[static_cast<size_t>(idx)].id);
    for (int i = 0; i < cnt; ++i) acc = graded_mul(cg.disc, acc, g);
  }
  if (acc.d == 1) return acc.gamma;
  if (acc.d == -cg.disc.radicand) {
    KNumber twisted = k_mul(cg.disc, acc.gamma, KNumber{0, 1});
    return k_scale(twisted, Rat(1, acc.d));
  }
  fail(ErrorKind::Internal, "block product has radicand " + std::to_string(acc.d));
}

}  // namespace

FactorizationReport enumerate_factorizations(uint64_t n, const FormClassGroup& cg, bool want_explicit,
                                             int cap) {
  IdealFactorization fact = ideal_factorization(n, cg);
  FactorizationReport rep;
  rep.n = n;
  rep.disc = cg.disc.value;
  rep.sequence = class_sequence_of(fact);
  rep.partitions = enumerate_partitions(rep.sequence, cap);
  rep.eta = static_cast<int64_t>(rep.partitions.size());
  for (auto& p : rep.partitions) rep.lengths.insert(static_cast<int>(p.size()));
  rep.mode = ReportMode::Symbolic;
  if (!want_explicit) return rep;

  for (auto& e : fact.entries) {
    if (element_order(cg.group, e.cls) > 2)
      fail(ErrorKind::ExplicitUnavailable,
           "class of " + std::to_string(e.p) + " has order " +
               std::to_string(element_order(cg.group, e.cls)) + " > 2");
  }
  std::map<std::string, GradedNumber> elems = symbol_elements(fact, cg);
  for (auto& partition : rep.partitions) {
    std::vector<KNumber> factors;
    for (const Block& b : partition) factors.push_back(block_element(cg, rep.sequence, b, elems));
    KNumber prod{1, 0};
    for (auto& f : factors) prod = k_mul(cg.disc, f, prod);
    KNumber unit = k_scale(prod, Rat(1, static_cast<int64_t>(n)));
    if (!is_unit(cg.disc, unit))
      fail(ErrorKind::Internal, "explicit product is not n times a unit");
    if (!(unit == KNumber{1, 0})) {
      // units have norm 1, so the inverse is the conjugate
      factors.front() = k_mul(cg.disc, factors.front(), k_conj(unit));
    }
    rep.explicit_factors.push_back(std::move(factors));
    rep.folded_units.push_back(unit);
  }
  rep.mode = ReportMode::Explicit;
  return rep;
}

int64_t closed_form_prime_power(uint64_t p, int n, const FormClassGroup& cg) {
  SplittingType st = splitting_type(p, cg.disc);
  if (st == SplittingType::Inert || st == SplittingType::Ramified) return 1;
  int64_t m = element_order(cg.group, class_of_prime(p, cg));
  if (m == 1) return 1;
  return n / m + 1;
}

int64_t closed_form_distinct_same_class(int64_t k, int64_t m) {
  if (k < 0 || m < 1) fail(ErrorKind::InvalidInput, "need k >= 0, m >= 1");
  if (k % m != 0) return 0;  // NoPartition
  BigInt r = 1;
  for (BigInt i = 1; i <= k; ++i) r *= i;
  BigInt mf = 1;
  for (BigInt i = 1; i <= m; ++i) mf *= i;
  for (int64_t i = 0; i < k / m; ++i) r /= mf;
  for (BigInt i = 1; i <= k / m; ++i) r /= i;
  if (r > std::numeric_limits<int64_t>::max()) fail(ErrorKind::TooLarge, "count overflows int64");
  return static_cast<int64_t>(r);
}

namespace {

KNumber canonical_associate(const Discriminant& disc, const KNumber& x) {
  KNumber best = x;
  for (const KNumber& u : units(disc)) {
    KNumber cand = k_mul(disc, x, u);
    if (cand.u < best.u || (cand.u == best.u && cand.v < best.v)) best = cand;
  }
  return best;
}

}  // namespace

VerifyResult verify(const FactorizationReport& report, uint64_t n, const FormClassGroup& cg) {
  if (report.mode != ReportMode::Explicit) return {false, "report is not explicit"};
  IdealFactorization fact;
  try {
    fact = ideal_factorization(n, cg);
  } catch (const Error& e) {
    return {false, e.what()};
  }
  ClassSequence seq = class_sequence_of(fact);
  if (!(seq.group == report.sequence.group)) return {false, "group mismatch"};
  if (seq.entries.size() != report.sequence.entries.size()) return {false, "sequence mismatch"};
  for (size_t i = 0; i < seq.entries.size(); ++i) {
    if (seq.entries[i].id != report.sequence.entries[i].id ||
        !(seq.entries[i].cls == report.sequence.entries[i].cls) ||
        seq.entries[i].mult != report.sequence.entries[i].mult)
      return {false, "sequence mismatch"};
  }
  if (report.explicit_factors.size() != report.partitions.size())
    return {false, "explicit factorization count differs from partition count"};

  for (const BlockPartition& partition : report.partitions) {
    std::vector<int> used(seq.entries.size(), 0);
    for (const Block& b : partition) {
      std::vector<GroupElement> classes;
      for (auto& [idx, cnt] : b.items) {
        if (idx < 0 || idx >= static_cast<int>(seq.entries.size())) return {false, "block index out of range"};
        used[static_cast<size_t>(idx)] += cnt;
        for (int i = 0; i < cnt; ++i) classes.push_back(seq.entries[static_cast<size_t>(idx)].cls);
      }
      if (!is_minimal_zero_sum(seq.group, classes)) return {false, "non-minimal block"};
    }
    for (size_t i = 0; i < used.size(); ++i) {
      if (used[i] != seq.entries[i].mult) return {false, "partition does not cover the sequence"};
    }
  }

  for (size_t fi = 0; fi < report.explicit_factors.size(); ++fi) {
    const auto& factors = report.explicit_factors[fi];
    if (factors.size() != report.partitions[fi].size())
      return {false, "element count differs from block count"};
    KNumber prod{1, 0};
    for (const KNumber& x : factors) {
      if (!is_integral(cg.disc, x)) return {false, "non-integral element"};
      if (is_unit(cg.disc, x)) return {false, "unit listed as a factor"};
      prod = k_mul(cg.disc, prod, x);
    }
    KNumber ratio = k_scale(prod, Rat(1, static_cast<int64_t>(n)));
    if (!is_unit(cg.disc, ratio)) return {false, "product is not n times a unit"};
  }

  // distinct partitions must give non-associate factorizations
  std::vector<std::vector<std::pair<Rat, Rat>>> canon;
  for (const auto& factors : report.explicit_factors) {
    std::vector<std::pair<Rat, Rat>> c;
    for (const KNumber& x : factors) {
      KNumber k = canonical_associate(cg.disc, x);
      c.emplace_back(k.u, k.v);
    }
    std::sort(c.begin(), c.end());
    canon.push_back(std::move(c));
  }
  for (size_t i = 0; i < canon.size(); ++i) {
    for (size_t j = i + 1; j < canon.size(); ++j) {
      if (canon[i] == canon[j]) return {false, "associate factorizations"};
    }
  }
  return {true, ""};
}

EtaSurveyor::EtaSurveyor(const FormClassGroup& cg, uint32_t max_n, int cap)
    : cg_(cg), cap_(cap), spf_(spf_sieve(std::max<uint32_t>(max_n, 2))) {
  // the longest sequence for n <= max_n is a ramified prime power, with total
  // length 2*v_p(n); make sure the cap admits every n in range
  int bits = 1;
  while ((1u << bits) <= max_n && bits < 31) ++bits;
  cap_ = std::max(cap_, 2 * bits + 2);
}

EtaSurveyor::Shape EtaSurveyor::shape_of(uint32_t n) {
  Shape shape;
  uint32_t x = n;
  while (x > 1) {
    uint32_t p = spf_[x];
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    auto it = prime_cache_.find(p);
    if (it == prime_cache_.end()) {
      SplittingType st = splitting_type(p, cg_.disc);
      std::pair<SymbolKind, GroupElement> info;
      if (st == SplittingType::Inert) {
        info = {SymbolKind::Inert, identity(cg_.group)};
      } else if (st == SplittingType::Ramified) {
        info = {SymbolKind::Ramified, class_of_prime(p, cg_)};
      } else {
        info = {SymbolKind::SplitHalf, class_of_prime(p, cg_)};
      }
      it = prime_cache_.emplace(p, std::move(info)).first;
    }
    auto& [kind, cls] = it->second;
    uint64_t r = element_rank(cg_.group, cls);
    if (kind == SymbolKind::Inert) {
      shape.emplace_back(r, v);
    } else if (kind == SymbolKind::Ramified) {
      shape.emplace_back(r, 2 * v);
    } else {
      shape.emplace_back(r, v);
      shape.emplace_back(element_rank(cg_.group, neg(cg_.group, cls)), v);
    }
  }
  std::sort(shape.begin(), shape.end());
  return shape;
}

ClassSequence EtaSurveyor::sequence_for(const Shape& s) {
  std::vector<SequenceEntry> entries;
  for (size_t i = 0; i < s.size(); ++i) {
    entries.push_back(SequenceEntry{"s" + std::to_string(i), element_unrank(cg_.group, s[i].first),
                                    s[i].second});
  }
  return make_sequence(cg_.group, std::move(entries));
}

int64_t EtaSurveyor::eta_of(uint32_t n) {
  if (n <= 1) return 1;
  Shape s = shape_of(n);
  auto it = eta_cache_.find(s);
  if (it == eta_cache_.end()) it = eta_cache_.emplace(s, count_partitions(sequence_for(s), cap_)).first;
  return it->second;
}

std::set<int> EtaSurveyor::lengths_of(uint32_t n) {
  if (n <= 1) return {0};
  Shape s = shape_of(n);
  auto it = length_cache_.find(s);
  if (it == length_cache_.end()) it = length_cache_.emplace(s, length_set(sequence_for(s), cap_)).first;
  return it->second;
}

}  // namespace factorlat
