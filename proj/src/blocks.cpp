#include "factorlat/blocks.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "factorlat/errors.hpp"
#include "factorlat/intmath.hpp"

namespace factorlat {

int ClassSequence::total_length() const {
  int t = 0;
  for (auto& e : entries) t += e.mult;
  return t;
}

int Block::size() const {
  int t = 0;
  for (auto& [i, c] : items) t += c;
  return t;
}

ClassSequence make_sequence(const AbelianGroup& g, std::vector<SequenceEntry> entries) {
  for (auto& e : entries) {
    validate_element(g, e.cls);
    if (e.mult < 1) fail(ErrorKind::InvalidInput, "multiplicity < 1 for symbol " + e.id);
  }
  std::sort(entries.begin(), entries.end(),
            [](const SequenceEntry& a, const SequenceEntry& b) { return a.id < b.id; });
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].id == entries[i - 1].id)
      fail(ErrorKind::InvalidInput, "duplicate symbol id " + entries[i].id);
  }
  return ClassSequence{g, std::move(entries)};
}

std::vector<std::string> block_ids(const ClassSequence& seq, const Block& b) {
  std::vector<std::string> out;
  for (auto& [idx, cnt] : b.items) {
    for (int i = 0; i < cnt; ++i) out.push_back(seq.entries[static_cast<size_t>(idx)].id);
  }
  return out;
}

bool is_minimal_zero_sum(const AbelianGroup& g, const std::vector<GroupElement>& multiset) {
  if (multiset.empty()) return false;
  GroupElement total = identity(g);
  for (auto& e : multiset) total = add(g, total, e);
  if (!is_identity(total)) return false;
  // Odometer over all sub-multisets; reject if any proper nonempty one sums
  // to the identity. Deliberately naive: this is the oracle the enumerator is
  // checked against.
  std::map<GroupElement, int> counts;
  for (auto& e : multiset) counts[e] += 1;
  std::vector<GroupElement> distinct;
  std::vector<int> mult;
  for (auto& [e, c] : counts) {
    distinct.push_back(e);
    mult.push_back(c);
  }
  std::vector<int> pick(distinct.size(), 0);
  size_t n = distinct.size();
  while (true) {
    size_t j = 0;
    while (j < n && pick[j] == mult[j]) {
      pick[j] = 0;
      ++j;
    }
    if (j == n) break;
    ++pick[j];
    int taken = 0;
    GroupElement s = identity(g);
    for (size_t i = 0; i < n; ++i) {
      taken += pick[i];
      if (pick[i]) s = add(g, s, scalar_mul(g, pick[i], distinct[i]));
    }
    if (taken == static_cast<int>(multiset.size())) continue;  // the full multiset
    if (is_identity(s)) return false;
  }
  return true;
}

namespace {

using RankSet = std::unordered_set<uint64_t>;

struct BlockSearch {
  const ClassSequence& seq;
  const std::vector<int>& avail;
  std::vector<Block>& out;
  std::vector<int> used;
  std::vector<uint64_t> class_rank;
  std::vector<GroupElement> cls;

  BlockSearch(const ClassSequence& s, const std::vector<int>& a, std::vector<Block>& o)
      : seq(s), avail(a), out(o), used(s.entries.size(), 0) {
    for (auto& e : s.entries) {
      cls.push_back(e.cls);
      class_rank.push_back(element_rank(s.group, e.cls));
    }
  }

  void emit() {
    Block b;
    for (size_t i = 0; i < used.size(); ++i) {
      if (used[i]) b.items.emplace_back(static_cast<int>(i), used[i]);
    }
    out.push_back(std::move(b));
  }

  // strict = sums of nonempty sub-multisets other than the full content;
  // all = strict plus the total. Zero in strict kills minimality for every
  // extension, so the branch dies there.
  void grow(int entry, const GroupElement& sum, const RankSet& strict, const RankSet& all,
            bool content_empty) {
    const AbelianGroup& g = seq.group;
    GroupElement nsum = add(g, sum, cls[static_cast<size_t>(entry)]);
    RankSet nstrict = all;
    for (uint64_t r : strict)
      nstrict.insert(element_rank(g, add(g, element_unrank(g, r), cls[static_cast<size_t>(entry)])));
    if (!content_empty) nstrict.insert(class_rank[static_cast<size_t>(entry)]);
    if (nstrict.count(0)) return;
    used[static_cast<size_t>(entry)] += 1;
    if (is_identity(nsum)) {
      emit();
    } else {
      RankSet nall = nstrict;
      nall.insert(element_rank(g, nsum));
      for (int e = entry; e < static_cast<int>(seq.entries.size()); ++e) {
        if (used[static_cast<size_t>(e)] < avail[static_cast<size_t>(e)])
          grow(e, nsum, nstrict, nall, false);
      }
    }
    used[static_cast<size_t>(entry)] -= 1;
  }
};

// All minimal zero-sum blocks within `avail` whose least entry is `anchor`.
std::vector<Block> blocks_anchored_at(const ClassSequence& seq, const std::vector<int>& avail, int anchor) {
  std::vector<Block> out;
  if (avail[static_cast<size_t>(anchor)] <= 0) return out;
  BlockSearch bs(seq, avail, out);
  bs.grow(anchor, identity(seq.group), {}, {}, true);
  std::sort(out.begin(), out.end());
  return out;
}

void check_cap(const ClassSequence& seq, int cap) {
  if (cap < 1) fail(ErrorKind::InvalidInput, "cap < 1");
  if (seq.total_length() > cap)
    fail(ErrorKind::TooLarge, "sequence length " + std::to_string(seq.total_length()) +
                                  " exceeds cap " + std::to_string(cap));
}

bool block_fits(const Block& b, const std::vector<int>& residual) {
  for (auto& [i, c] : b.items) {
    if (residual[static_cast<size_t>(i)] < c) return false;
  }
  return true;
}

void apply_block(const Block& b, std::vector<int>& residual, int sign) {
  for (auto& [i, c] : b.items) residual[static_cast<size_t>(i)] += sign * c;
}

// Global anchored block table for one sequence: blocks[a] = all minimal
// blocks whose least symbol is a, in canonical order.
struct BlockTable {
  std::vector<std::vector<Block>> by_anchor;

  static BlockTable build(const ClassSequence& seq) {
    BlockTable t;
    std::vector<int> full;
    for (auto& e : seq.entries) full.push_back(e.mult);
    for (int a = 0; a < static_cast<int>(seq.entries.size()); ++a)
      t.by_anchor.push_back(blocks_anchored_at(seq, full, a));
    return t;
  }
};

}  // namespace

std::vector<Block> enumerate_minimal_blocks(const ClassSequence& seq, int cap) {
  check_cap(seq, cap);
  BlockTable t = BlockTable::build(seq);
  std::vector<Block> out;
  for (auto& v : t.by_anchor) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Partitions are generated with the block containing the least remaining
// symbol chosen first; consecutive blocks sharing that anchor are forced
// non-decreasing, so every unordered partition appears exactly once.
std::vector<BlockPartition> enumerate_partitions(const ClassSequence& seq, int cap) {
  check_cap(seq, cap);
  BlockTable table = BlockTable::build(seq);
  std::vector<BlockPartition> out;
  std::vector<int> residual;
  for (auto& e : seq.entries) residual.push_back(e.mult);
  int remaining = seq.total_length();
  BlockPartition current;

  std::function<void(int, const Block*)> rec = [&](int prev_anchor, const Block* prev_block) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    int anchor = 0;
    while (residual[static_cast<size_t>(anchor)] == 0) ++anchor;
    for (const Block& b : table.by_anchor[static_cast<size_t>(anchor)]) {
      if (anchor == prev_anchor && prev_block && b < *prev_block) continue;
      if (!block_fits(b, residual)) continue;
      apply_block(b, residual, -1);
      remaining -= b.size();
      current.push_back(b);
      rec(anchor, &b);
      current.pop_back();
      remaining += b.size();
      apply_block(b, residual, +1);
    }
  };
  rec(-1, nullptr);
  return out;
}

namespace {

std::string memo_key(const std::vector<int>& residual, int lb) {
  std::string k;
  k.reserve(residual.size() + 4);
  for (int r : residual) k.push_back(static_cast<char>(r));
  k.push_back(static_cast<char>(lb & 0xff));
  k.push_back(static_cast<char>((lb >> 8) & 0xff));
  return k;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::TooLarge, "partition count overflows int64");
  return r;
}

}  // namespace

int64_t count_partitions(const ClassSequence& seq, int cap) {
  check_cap(seq, cap);
  BlockTable table = BlockTable::build(seq);
  std::vector<int> residual;
  for (auto& e : seq.entries) residual.push_back(e.mult);
  int remaining = seq.total_length();
  std::unordered_map<std::string, int64_t> memo;

  // lb = index into the current anchor's block list below which choices are
  // forbidden (non-decreasing within an anchor run); reset on anchor change.
  std::function<int64_t(int, int)> rec = [&](int prev_anchor, int lb) -> int64_t {
    if (remaining == 0) return 1;
    int anchor = 0;
    while (residual[static_cast<size_t>(anchor)] == 0) ++anchor;
    if (anchor != prev_anchor) lb = 0;
    std::string key = memo_key(residual, lb);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int64_t total = 0;
    const auto& cands = table.by_anchor[static_cast<size_t>(anchor)];
    for (int bi = lb; bi < static_cast<int>(cands.size()); ++bi) {
      const Block& b = cands[static_cast<size_t>(bi)];
      if (!block_fits(b, residual)) continue;
      apply_block(b, residual, -1);
      remaining -= b.size();
      total = checked_add(total, rec(anchor, bi));
      remaining += b.size();
      apply_block(b, residual, +1);
    }
    memo.emplace(std::move(key), total);
    return total;
  };
  return rec(-1, 0);
}

int64_t count_via_gf(const ClassSequence& seq, int cap) {
  check_cap(seq, cap);
  std::vector<Block> blocks = enumerate_minimal_blocks(seq, cap);
  size_t n = seq.entries.size();
  // dense truncated series over the exponent box prod (e_i + 1)
  uint64_t states = 1;
  for (auto& e : seq.entries) {
    states *= static_cast<uint64_t>(e.mult) + 1;
    if (states > (1ull << 26)) fail(ErrorKind::TooLarge, "generating-function state space too large");
  }
  std::vector<uint64_t> stride(n, 1);
  for (size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * (static_cast<uint64_t>(seq.entries[i].mult) + 1);
  std::vector<int64_t> dp(states, 0);
  dp[0] = 1;
  std::vector<int> u(n, 0);
  for (const Block& b : blocks) {
    std::vector<int> v(n, 0);
    uint64_t off = 0;
    for (auto& [i, c] : b.items) {
      v[static_cast<size_t>(i)] = c;
      off += static_cast<uint64_t>(c) * stride[static_cast<size_t>(i)];
    }
    // multiply by 1/(1 - x^v): dp[u] += dp[u - v], u ascending
    std::fill(u.begin(), u.end(), 0);
    for (uint64_t idx = 0; idx < states; ++idx) {
      bool ge = true;
      for (size_t i = 0; i < n; ++i) {
        if (u[i] < v[i]) {
          ge = false;
          break;
        }
      }
      if (ge && dp[idx - off] != 0) dp[idx] = checked_add(dp[idx], dp[idx - off]);
      if (idx + 1 < states) {
        for (size_t j = n; j-- > 0;) {
          if (++u[j] <= seq.entries[j].mult) break;
          u[j] = 0;
        }
      }
    }
  }
  return dp[states - 1];
}

namespace {

// Breadth-first search over zero-sum-free sequences with states deduplicated
// on the set of achievable subset sums. The sum set grows strictly with each
// appended element, so (a) edges always increase the popcount, letting the
// search process each distinct sum set exactly once, keeping only the longest
// sequence length realizing it, and (b) a state of length l with P sums can
// never be extended past l + (h-1-P) total, a bound that is non-increasing
// along a chain. States that cannot beat the best length already known
// achievable -- seeded with sum (d_i - 1) via the unit vectors of the
// invariant factors -- are dropped without affecting the maximum.
//
// Returns the maximal zero-sum-free length. uint64 masks cover group order
// <= 64; a generic word-vector path covers larger caps.
inline constexpr size_t kDavenportStateBudget = 24'000'000;

template <typename Mask, typename Ops>
int longest_zero_sum_free(int64_t h, const Ops& ops, int seed_len) {
  std::unordered_map<Mask, int, typename Ops::Hash> best_len;
  std::vector<std::vector<Mask>> by_pc(static_cast<size_t>(h) + 1);
  best_len.emplace(ops.empty(), 0);
  by_pc[0].push_back(ops.empty());
  int best = seed_len;
  for (int pc = 0; pc < static_cast<int>(h); ++pc) {
    for (size_t qi = 0; qi < by_pc[static_cast<size_t>(pc)].size(); ++qi) {
      Mask m = by_pc[static_cast<size_t>(pc)][qi];
      int len = best_len.at(m);
      for (int e = 1; e < static_cast<int>(h); ++e) {
        Mask nm = ops.extend(m, e);
        if (ops.test(nm, 0)) continue;  // a zero-sum sub-multiset appeared
        int npc = ops.popcount(nm);
        if (len + 1 + (static_cast<int>(h) - 1 - npc) <= best) continue;
        auto [it, fresh] = best_len.try_emplace(nm, len + 1);
        if (fresh) {
          if (best_len.size() > kDavenportStateBudget)
            fail(ErrorKind::TooLarge, "davenport search exceeds the state budget");
          by_pc[static_cast<size_t>(npc)].push_back(nm);
        } else if (it->second < len + 1) {
          it->second = len + 1;
        }
        if (len + 1 > best) best = len + 1;
      }
    }
    by_pc[static_cast<size_t>(pc)].clear();
    by_pc[static_cast<size_t>(pc)].shrink_to_fit();
  }
  return best;
}

// Recovers an explicit zero-sum-free sequence of the given target length:
// level-by-level search where everything that cannot reach the target is
// pruned, so only witness chains survive.
template <typename Mask, typename Ops>
std::vector<int> zero_sum_free_witness(int64_t h, const Ops& ops, int target) {
  struct Parent {
    Mask prev;
    int elem;
  };
  std::vector<std::unordered_map<Mask, Parent, typename Ops::Hash>> levels;
  levels.emplace_back();
  levels.back().emplace(ops.empty(), Parent{ops.empty(), -1});
  for (int level = 0; level < target; ++level) {
    std::unordered_map<Mask, Parent, typename Ops::Hash> next;
    for (auto& [mask, par] : levels.back()) {
      for (int e = 1; e < static_cast<int>(h); ++e) {
        Mask nm = ops.extend(mask, e);
        if (ops.test(nm, 0)) continue;
        if (level + 1 + (static_cast<int>(h) - 1 - ops.popcount(nm)) < target) continue;
        next.try_emplace(nm, Parent{mask, e});
      }
    }
    if (next.empty()) fail(ErrorKind::Internal, "witness reconstruction lost the chain");
    levels.push_back(std::move(next));
  }
  std::vector<int> elems;
  Mask cur = levels.back().begin()->first;
  for (int l = target; l > 0; --l) {
    const Parent& p = levels[static_cast<size_t>(l)].at(cur);
    elems.push_back(p.elem);
    cur = p.prev;
  }
  return elems;
}

template <typename Mask, typename Ops>
DavenportResult davenport_search(const AbelianGroup& g, int64_t h, const Ops& ops, int seed_len) {
  int best = longest_zero_sum_free<Mask>(h, ops, seed_len);
  DavenportResult res;
  res.value = best + 1;
  GroupElement sum = identity(g);
  if (best > seed_len) {
    for (int e : zero_sum_free_witness<Mask>(h, ops, best)) {
      GroupElement x = element_unrank(g, static_cast<uint64_t>(e));
      res.witness.push_back(x);
      sum = add(g, sum, x);
    }
  } else {
    // unit-vector witness: (d_i - 1) copies of each basis element
    for (size_t i = 0; i < g.factors.size(); ++i) {
      GroupElement e = identity(g);
      e.c[i] = 1;
      for (int64_t t = 1; t < g.factors[i]; ++t) {
        res.witness.push_back(e);
        sum = add(g, sum, e);
      }
    }
  }
  // appending the negated total turns a maximal zero-sum-free sequence into
  // a minimal zero-sum sequence of length D
  res.witness.push_back(neg(g, sum));
  std::sort(res.witness.begin(), res.witness.end());
  return res;
}

struct U64Ops {
  std::vector<std::vector<int>> addtab;  // addtab[x][g]

  struct Hash {
    size_t operator()(uint64_t m) const { return std::hash<uint64_t>()(m); }
  };

  uint64_t empty() const { return 0; }
  bool test(uint64_t m, int bit) const { return (m >> bit) & 1; }
  int popcount(uint64_t m) const { return __builtin_popcountll(m); }
  uint64_t extend(uint64_t m, int e) const {
    uint64_t nm = m | (1ull << e);
    uint64_t rest = m;
    while (rest) {
      int s = __builtin_ctzll(rest);
      rest &= rest - 1;
      nm |= 1ull << addtab[static_cast<size_t>(s)][static_cast<size_t>(e)];
    }
    return nm;
  }
};

struct VecMask {
  std::vector<uint64_t> w;
  bool operator==(const VecMask&) const = default;
};

struct VecOps {
  std::vector<std::vector<int>> addtab;
  size_t words = 0;

  struct Hash {
    size_t operator()(const VecMask& m) const {
      size_t h = m.w.size();
      for (uint64_t x : m.w) h ^= std::hash<uint64_t>()(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };

  VecMask empty() const { return VecMask{std::vector<uint64_t>(words, 0)}; }
  bool test(const VecMask& m, int bit) const {
    return (m.w[static_cast<size_t>(bit) / 64] >> (static_cast<size_t>(bit) % 64)) & 1;
  }
  int popcount(const VecMask& m) const {
    int c = 0;
    for (uint64_t w : m.w) c += __builtin_popcountll(w);
    return c;
  }
  VecMask extend(const VecMask& m, int e) const {
    VecMask nm = m;
    nm.w[static_cast<size_t>(e) / 64] |= 1ull << (static_cast<size_t>(e) % 64);
    for (size_t wi = 0; wi < words; ++wi) {
      uint64_t rest = m.w[wi];
      while (rest) {
        int b = __builtin_ctzll(rest);
        rest &= rest - 1;
        int s = static_cast<int>(wi * 64) + b;
        int t = addtab[static_cast<size_t>(s)][static_cast<size_t>(e)];
        nm.w[static_cast<size_t>(t) / 64] |= 1ull << (static_cast<size_t>(t) % 64);
      }
    }
    return nm;
  }
};

std::vector<std::vector<int>> build_addtab(const AbelianGroup& g, int64_t h) {
  std::vector<GroupElement> elems = enumerate_elements(g, h);
  std::vector<std::vector<int>> tab(static_cast<size_t>(h), std::vector<int>(static_cast<size_t>(h)));
  for (int64_t x = 0; x < h; ++x) {
    for (int64_t y = 0; y < h; ++y) {
      tab[static_cast<size_t>(x)][static_cast<size_t>(y)] = static_cast<int>(
          element_rank(g, add(g, elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])));
    }
  }
  return tab;
}

}  // namespace

DavenportResult davenport_with_witness(const AbelianGroup& g, int cap) {
  if (cap < 1) fail(ErrorKind::InvalidInput, "cap < 1");
  if (!order_at_most(g, cap))
    fail(ErrorKind::TooLarge, "group order exceeds davenport cap " + std::to_string(cap));
  int64_t h = group_order(g);
  if (h == 1) return DavenportResult{1, {identity(g)}};
  int seed_len = 0;
  for (int64_t f : g.factors) seed_len += static_cast<int>(f) - 1;
  if (h <= 64) {
    U64Ops ops{build_addtab(g, h)};
    return davenport_search<uint64_t>(g, h, ops, seed_len);
  }
  VecOps ops;
  ops.addtab = build_addtab(g, h);
  ops.words = static_cast<size_t>((h + 63) / 64);
  return davenport_search<VecMask>(g, h, ops, seed_len);
}

int davenport(const AbelianGroup& g, int cap) { return davenport_with_witness(g, cap).value; }

std::set<int> length_set(const ClassSequence& seq, int cap) {
  std::set<int> out;
  for (auto& p : enumerate_partitions(seq, cap)) out.insert(static_cast<int>(p.size()));
  return out;
}

ElasticityResult elasticity(const AbelianGroup& g, int cap) {
  if (group_order(g) == 1) fail(ErrorKind::Undefined, "elasticity of the trivial group");
  DavenportResult d = davenport_with_witness(g, cap);
  ElasticityResult res;
  res.num = d.value;
  res.den = 2;
  int64_t gg = std::gcd(res.num, res.den);
  res.num /= gg;
  res.den /= gg;
  // S and -S with distinct labels: splits as S | -S (2 blocks) and as the
  // pairs {s, -s} (D blocks); every block has size in [2, D], so the ratio
  // D/2 is attained and never exceeded.
  std::vector<SequenceEntry> entries;
  char base = 's';
  for (int half = 0; half < 2; ++half) {
    for (size_t i = 0; i < d.witness.size(); ++i) {
      GroupElement cls = half == 0 ? d.witness[i] : neg(g, d.witness[i]);
      std::string id(1, static_cast<char>(base + half));
      id += std::to_string(i);
      entries.push_back(SequenceEntry{id, cls, 1});
    }
  }
  res.witness = make_sequence(g, std::move(entries));
  return res;
}

}  // namespace factorlat
