#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "factorlat/group.hpp"

namespace factorlat {

inline constexpr int kDefaultEnumerationCap = 24;
inline constexpr int kDefaultDavenportCap = 64;

struct SequenceEntry {
  std::string id;
  GroupElement cls;
  int mult = 1;
};

// Multiset of class-labeled symbols. Entries are kept sorted by id and ids
// are distinct; multiplicities >= 1.
struct ClassSequence {
  AbelianGroup group;
  std::vector<SequenceEntry> entries;

  int total_length() const;
};

ClassSequence make_sequence(const AbelianGroup& g, std::vector<SequenceEntry> entries);

// Sub-multiset of a sequence: (entry index, count), sorted by index, counts >= 1.
// A valid Block is minimal zero-sum: class-sum is the identity and no proper
// nonempty sub-multiset sums to the identity.
struct Block {
  std::vector<std::pair<int, int>> items;

  bool operator==(const Block&) const = default;
  auto operator<=>(const Block&) const = default;
  int size() const;
};

using BlockPartition = std::vector<Block>;

std::vector<std::string> block_ids(const ClassSequence& seq, const Block& b);

bool is_minimal_zero_sum(const AbelianGroup& g, const std::vector<GroupElement>& multiset);

// All distinct minimal zero-sum sub-multisets, canonically ordered.
std::vector<Block> enumerate_minimal_blocks(const ClassSequence& seq, int cap = kDefaultEnumerationCap);

// Every partition of the sequence into minimal zero-sum blocks, each exactly
// once. Blocks inside a partition and the partitions themselves come out in a
// fixed canonical order.
std::vector<BlockPartition> enumerate_partitions(const ClassSequence& seq, int cap = kDefaultEnumerationCap);

// Memoized count; equals enumerate_partitions(...).size() without
// materializing partitions.
int64_t count_partitions(const ClassSequence& seq, int cap = kDefaultEnumerationCap);

// Independent count: coefficient of prod x_i^{e_i} in the truncated power
// series prod over minimal blocks S of 1/(1 - x^S).
int64_t count_via_gf(const ClassSequence& seq, int cap = kDefaultEnumerationCap);

struct DavenportResult {
  int value = 0;
  // a minimal zero-sum sequence of maximal length
  std::vector<GroupElement> witness;
};

int davenport(const AbelianGroup& g, int cap = kDefaultDavenportCap);
DavenportResult davenport_with_witness(const AbelianGroup& g, int cap = kDefaultDavenportCap);

std::set<int> length_set(const ClassSequence& seq, int cap = kDefaultEnumerationCap);

struct ElasticityResult {
  int64_t num = 0;
  int64_t den = 1;
  // sequence whose factorizations achieve the max/min length ratio num/den
  ClassSequence witness;
};

ElasticityResult elasticity(const AbelianGroup& g, int cap = kDefaultDavenportCap);

}  // namespace factorlat
