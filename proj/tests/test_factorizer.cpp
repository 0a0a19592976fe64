#include <algorithm>

#include "doctest.h"
#include "factorlat/errors.hpp"
#include "factorlat/factorizer.hpp"
#include "factorlat/intmath.hpp"

using namespace factorlat;

namespace {

const FormClassGroup& cg87() {
  static FormClassGroup cg = class_group(check_fundamental(-87));
  return cg;
}
const FormClassGroup& cg84() {
  static FormClassGroup cg = class_group(check_fundamental(-21));
  return cg;
}
const FormClassGroup& cg20() {
  static FormClassGroup cg = class_group(check_fundamental(-20));
  return cg;
}

KNumber kint(int64_t u, int64_t v = 0) { return KNumber{Rat(u), Rat(v)}; }

KNumber product_of(const Discriminant& d, const std::vector<KNumber>& xs) {
  KNumber p = kint(1);
  for (auto& x : xs) p = k_mul(d, p, x);
  return p;
}

}  // namespace

TEST_CASE("ideal_factorization: 14145 at -87") {
  // 14145 = 3 * 5 * 23 * 41; 3 ramifies into the order-2 class, 5 and 23 are
  // inert (the principal form x^2+xy+22y^2 takes the value 24 at (1,1), and
  // kronecker(-87|23) = -1, so 23 has no finite class), 41 splits
  IdealFactorization f = ideal_factorization(14145, cg87());
  REQUIRE(f.entries.size() == 5);
  std::map<std::string, IdealEntry> by_id;
  for (auto& e : f.entries) by_id[e.id] = e;
  CHECK(by_id.at("r3").kind == SymbolKind::Ramified);
  CHECK(by_id.at("r3").exponent == 2);
  CHECK(element_order(cg87().group, by_id.at("r3").cls) == 2);
  CHECK(by_id.at("p5").kind == SymbolKind::Inert);
  CHECK(by_id.at("p23").kind == SymbolKind::Inert);
  CHECK(by_id.at("q41").kind == SymbolKind::SplitHalf);
  CHECK(by_id.at("q41_bar").kind == SymbolKind::SplitHalfConj);
  CHECK(element_order(cg87().group, by_id.at("q41").cls) == 2);
  CHECK(by_id.at("q41").cls == by_id.at("q41_bar").cls);  // self-inverse class

  // norms reconstruct n^2: inert symbols have residue degree 2
  uint128 norm = 1;
  for (auto& e : f.entries) {
    int deg = e.kind == SymbolKind::Inert ? 2 : 1;
    for (int i = 0; i < deg * e.exponent; ++i) norm *= e.p;
  }
  CHECK(norm == (uint128)14145 * 14145);
}

TEST_CASE("ideal_factorization: 9 at -20 and inert primes") {
  IdealFactorization f9 = ideal_factorization(9, cg20());
  REQUIRE(f9.entries.size() == 2);
  CHECK(f9.entries[0].id == "q3");
  CHECK(f9.entries[0].exponent == 2);
  CHECK(!is_identity(f9.entries[0].cls));
  CHECK(f9.entries[1].id == "q3_bar");
  CHECK(f9.entries[1].exponent == 2);

  IdealFactorization f11 = ideal_factorization(11, cg20());
  REQUIRE(f11.entries.size() == 1);
  CHECK(f11.entries[0].kind == SymbolKind::Inert);
  CHECK(is_identity(f11.entries[0].cls));
  CHECK(f11.entries[0].exponent == 1);

  CHECK_THROWS_AS(ideal_factorization(1, cg20()), Error);
}

TEST_CASE("class_sequence_of keeps identity symbols") {
  IdealFactorization f = ideal_factorization(14145, cg87());
  ClassSequence seq = class_sequence_of(f);
  CHECK(seq.entries.size() == 5);
  CHECK(seq.total_length() == 6);
  int identity_syms = 0;
  for (auto& e : seq.entries) {
    if (is_identity(e.cls)) ++identity_syms;
  }
  CHECK(identity_syms == 2);
}

TEST_CASE("eta: pinned") {
  CHECK(eta(14145, cg87()) == 2);
  CHECK(eta(46189, cg84()) == 5);
  CHECK(eta(21, cg20()) == 3);  // (2k-1)!! with k = 2
  CHECK(eta(2, cg20()) == 1);
  CHECK(eta(6, cg20()) == 2);
}

TEST_CASE("enumerate: golden 14145") {
  FactorizationReport rep = enumerate_factorizations(14145, cg87(), true);
  CHECK(rep.eta == 2);
  REQUIRE(rep.partitions.size() == 2);
  CHECK(rep.mode == ReportMode::Explicit);

  // both partitions: singletons p23, p5 plus the two-block combinations
  // {r3 r3}/{q41 q41_bar} and {r3 q41}/{r3 q41_bar}
  auto ids = [&](const Block& b) { return block_ids(rep.sequence, b); };
  std::vector<std::vector<std::vector<std::string>>> got;
  for (auto& p : rep.partitions) {
    std::vector<std::vector<std::string>> blocks;
    for (auto& b : p) blocks.push_back(ids(b));
    got.push_back(blocks);
  }
  std::vector<std::vector<std::string>> first = {{"p23"}, {"p5"}, {"q41", "q41_bar"}, {"r3", "r3"}};
  std::vector<std::vector<std::string>> second = {{"p23"}, {"p5"}, {"q41", "r3"}, {"q41_bar", "r3"}};
  CHECK(got[0] == first);
  CHECK(got[1] == second);

  // explicit products are exactly n
  for (auto& factors : rep.explicit_factors) {
    CHECK(product_of(cg87().disc, factors) == kint(14145));
  }
  // the paired factorization is 23 * 5 * 41 * 3 up to order
  std::multiset<Rat> norms;
  for (auto& x : rep.explicit_factors[0]) norms.insert(k_norm(cg87().disc, x));
  CHECK(norms == std::multiset<Rat>{Rat(9), Rat(25), Rat(529), Rat(1681)});
  // second factorization contains the conjugate pair of norm 123 = 3 * 41
  std::multiset<Rat> norms2;
  for (auto& x : rep.explicit_factors[1]) norms2.insert(k_norm(cg87().disc, x));
  CHECK(norms2.count(Rat(123)) == 2);

  VerifyResult vr = verify(rep, 14145, cg87());
  CHECK(vr.ok);
}

TEST_CASE("enumerate: golden 46189") {
  FactorizationReport rep = enumerate_factorizations(46189, cg84(), true);
  CHECK(rep.eta == 5);
  REQUIRE(rep.explicit_factors.size() == 5);
  CHECK(rep.lengths == std::set<int>{3, 4});

  // first factorization is 13 * 11 * 17 * 19
  std::multiset<Rat> first;
  for (auto& x : rep.explicit_factors[0]) {
    CHECK(x.v == 0);
    first.insert(x.u);
  }
  CHECK(first == std::multiset<Rat>{Rat(11), Rat(13), Rat(17), Rat(19)});

  // the other four are 13 times a conjugate pair of norm 3553
  std::set<std::pair<Rat, Rat>> pairs;
  for (size_t i = 1; i < 5; ++i) {
    auto& factors = rep.explicit_factors[i];
    REQUIRE(factors.size() == 3);
    std::vector<KNumber> nonrational;
    for (auto& x : factors) {
      if (x.v != 0) nonrational.push_back(x);
    }
    REQUIRE(nonrational.size() == 2);
    CHECK(k_norm(cg84().disc, nonrational[0]) == Rat(3553));
    CHECK(k_mul(cg84().disc, nonrational[0], nonrational[1]) == kint(3553));
    Rat u = nonrational[0].u;
    Rat v = nonrational[0].v < 0 ? -nonrational[0].v : nonrational[0].v;
    pairs.insert({u < 0 ? -u : u, v});
    CHECK(product_of(cg84().disc, factors) == kint(46189));
  }
  // the four sign pairings: (58,3), (47,8), (23,12), (2,13)
  std::set<std::pair<Rat, Rat>> expected = {
      {Rat(58), Rat(3)}, {Rat(47), Rat(8)}, {Rat(23), Rat(12)}, {Rat(2), Rat(13)}};
  CHECK(pairs == expected);

  CHECK(verify(rep, 46189, cg84()).ok);
}

TEST_CASE("enumerate: inert prime") {
  FactorizationReport rep = enumerate_factorizations(13, cg84(), true);
  CHECK(rep.eta == 1);
  REQUIRE(rep.explicit_factors.size() == 1);
  REQUIRE(rep.explicit_factors[0].size() == 1);
  CHECK(rep.explicit_factors[0][0] == kint(13));
}

TEST_CASE("enumerate: explicit unavailable for order > 2 classes") {
  // 2 splits at -87 into a class of order 3 or 6
  CHECK(element_order(cg87().group, class_of_prime(2, cg87())) > 2);
  CHECK_THROWS_AS(enumerate_factorizations(2, cg87(), true), Error);
  try {
    enumerate_factorizations(2, cg87(), true);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExplicitUnavailable);
  }
  // symbolic mode still works
  FactorizationReport rep = enumerate_factorizations(2, cg87(), false);
  CHECK(rep.eta == 1);
}

TEST_CASE("explicit ramified principal prime") {
  FactorizationReport rep = enumerate_factorizations(5, cg20(), true);
  REQUIRE(rep.explicit_factors.size() == 1);
  REQUIRE(rep.explicit_factors[0].size() == 2);
  // 5 = -(sqrt(-5))^2, the unit -1 is folded into the first element
  CHECK(product_of(cg20().disc, rep.explicit_factors[0]) == kint(5));
  CHECK(rep.folded_units[0] == kint(-1));
  CHECK(verify(rep, 5, cg20()).ok);
}

TEST_CASE("closed_form_prime_power") {
  CHECK(closed_form_prime_power(3, 2, cg20()) == 2);
  CHECK(closed_form_prime_power(2, 6, cg20()) == 1);   // ramified
  CHECK(closed_form_prime_power(11, 9, cg20()) == 1);  // inert
  CHECK(closed_form_prime_power(41, 7, cg87()) == 4);  // order 2: 7/2 + 1
  // agreement with direct enumeration
  for (int n = 1; n <= 8; ++n) {
    CHECK(closed_form_prime_power(3, n, cg20()) == eta(static_cast<uint64_t>(std::pow(3, n)), cg20()));
  }
}

TEST_CASE("closed_form_distinct_same_class") {
  CHECK(closed_form_distinct_same_class(6, 2) == 15);
  CHECK(closed_form_distinct_same_class(4, 4) == 1);
  CHECK(closed_form_distinct_same_class(6, 3) == 10);
  CHECK(closed_form_distinct_same_class(5, 2) == 0);  // no partition
  CHECK(closed_form_distinct_same_class(0, 3) == 1);
}

TEST_CASE("verify rejects tampered reports") {
  FactorizationReport rep = enumerate_factorizations(14145, cg87(), true);
  REQUIRE(verify(rep, 14145, cg87()).ok);

  // splitting a pair block leaves a non-zero-sum singleton
  FactorizationReport split = rep;
  Block whole = split.partitions[0].back();
  REQUIRE(whole.size() == 2);
  Block half1{{ {whole.items[0].first, 1} }};
  split.partitions[0].pop_back();
  split.partitions[0].push_back(half1);
  split.partitions[0].push_back(half1);
  VerifyResult vr = verify(split, 14145, cg87());
  CHECK_FALSE(vr.ok);
  CHECK(vr.reason == "non-minimal block");

  // flipping a sign is absorbed by the unit group
  FactorizationReport flipped = rep;
  flipped.explicit_factors[0][0] = k_scale(flipped.explicit_factors[0][0], Rat(-1));
  flipped.explicit_factors[0][1] = k_scale(flipped.explicit_factors[0][1], Rat(-1));
  CHECK(verify(flipped, 14145, cg87()).ok);

  // a wrong element breaks the product
  FactorizationReport wrong = rep;
  wrong.explicit_factors[0][0] = kint(7);
  CHECK_FALSE(verify(wrong, 14145, cg87()).ok);
}

TEST_CASE("verify needs explicit mode") {
  FactorizationReport rep = enumerate_factorizations(21, cg20(), false);
  CHECK_FALSE(verify(rep, 21, cg20()).ok);
}

TEST_CASE("class sequences of rational integers sum to the identity") {
  for (uint64_t n : {4ull, 21ull, 36ull, 210ull, 9000ull, 46189ull}) {
    for (const FormClassGroup* cg : {&cg20(), &cg84(), &cg87()}) {
      ClassSequence seq = class_sequence_of(ideal_factorization(n, *cg));
      GroupElement sum = identity(seq.group);
      for (auto& e : seq.entries) sum = add(seq.group, sum, scalar_mul(seq.group, e.mult, e.cls));
      CHECK(is_identity(sum));
      CHECK(enumerate_partitions(seq).size() >= 1);
    }
  }
}

TEST_CASE("EtaSurveyor matches direct computation") {
  EtaSurveyor surveyor(cg20(), 500);
  for (uint32_t n = 2; n <= 500; ++n) {
    CHECK(surveyor.eta_of(n) == eta(n, cg20(), 40));
  }
}

TEST_CASE("explicit factorizations at -4 and -3 fold larger unit groups") {
  FormClassGroup cg4 = class_group(check_fundamental(-4));
  FactorizationReport r4 = enumerate_factorizations(4, cg4, true);
  CHECK(r4.eta == 1);
  REQUIRE(r4.explicit_factors.size() == 1);
  CHECK(r4.explicit_factors[0].size() == 4);  // (2) ramifies, four copies of 1+i
  CHECK(product_of(cg4.disc, r4.explicit_factors[0]) == kint(4));
  CHECK(verify(r4, 4, cg4).ok);

  FormClassGroup cg3 = class_group(check_fundamental(-3));
  FactorizationReport r3 = enumerate_factorizations(21, cg3, true);
  CHECK(r3.eta == 1);
  CHECK(product_of(cg3.disc, r3.explicit_factors[0]) == kint(21));
  CHECK(verify(r3, 21, cg3).ok);
}

TEST_CASE("eta agrees with gf and enumeration through the pipeline") {
  for (uint64_t n : {60ull, 441ull, 1155ull, 46189ull, 9009ull}) {
    for (const FormClassGroup* cg : {&cg20(), &cg84(), &cg87()}) {
      ClassSequence seq = class_sequence_of(ideal_factorization(n, *cg));
      int64_t a = count_partitions(seq);
      CHECK(a == count_via_gf(seq));
      CHECK(a == static_cast<int64_t>(enumerate_partitions(seq).size()));
      CHECK(a == eta(n, *cg));
    }
  }
}

TEST_CASE("caller-supplied factorization bypasses factoring") {
  std::map<uint64_t, int> factored = {{3, 1}, {5, 1}, {23, 1}, {41, 1}};
  IdealFactorization f = ideal_factorization(14145, cg87(), &factored);
  CHECK(f.entries.size() == 5);
  CHECK(eta(14145, cg87()) == count_partitions(class_sequence_of(f)));
}
