#pragma once

#include <utility>
#include <vector>

#include "ordkm/instance.hpp"
#include "ordkm/lp.hpp"
#include "ordkm/primal_dual.hpp"
#include "ordkm/proxy.hpp"

namespace ordkm {

// Two ascent runs bracketing k: r1 opens k1 > k centers, r2 opens k2 < k.
// The convex weights a,b satisfy a*k1 + b*k2 = k, a + b = 1. d1/d2 hold the
// 3-scaled proxy value of each client's assignment distance in T1/T2, and
// C1/C2 their demand-weighted sums.
struct BipointPair {
  PDResult r1, r2;
  int k = 0, k1 = 0, k2 = 0;
  double a = 0.0, b = 0.0;
  std::vector<double> d1, d2;
  double C1 = 0.0, C2 = 0.0;
  std::vector<int> demands;
};

BipointPair make_bipoint(const MetricInstance& inst, const ProxySpec& proxy,
                         const std::vector<int>& demands, PDResult below, PDResult above);

// Greedy client ordering key used when matching T2 facilities into T1.
enum class PairKey { SumOfBoth, MaxOfBoth };

// Matching of every T2 facility to a distinct T1 facility. The first
// witnessed pairs come from clients picked into A (their own T1/T2 centers);
// the rest complete the matching arbitrarily. sigma[k] is the A-client whose
// pick removed k (sigma[j] = j for j in A). S holds the clients whose T1
// center got matched.
struct Clustering {
  std::vector<int> A;
  std::vector<std::pair<int, int>> pairs;  // (T1 facility, T2 facility)
  int witnessed = 0;                       // pairs[0..witnessed) have a client in A
  std::vector<int> sigma;
  std::vector<char> in_S;
  std::vector<char> matched_t1;  // indexed by facility id
};

Clustering cluster_bipoint(const BipointPair& bp, PairKey key);

// Cost charged to an unmatched client k when its own T1 center stays closed:
// either the relay through sigma(k)'s pair, or a flat 3*max of its own values.
enum class FallbackRule { SiblingPath, TripleMax };

std::vector<double> fallback_costs(const BipointPair& bp, const Clustering& cl,
                                   FallbackRule rule);

// Integral optimum of the opening selection program: theta picks a side for
// the matched pairs, z picks up to k-k2 extra centers from unmatched T1.
struct OpeningChoice {
  int theta = 1;
  std::vector<int> z;  // opened facilities from T1 minus matched set
  double objective = 0.0;
};

// Solved combinatorially: theta by comparing the two side sums (ties open the
// T1 side), z by most negative demand-weighted savings first.
OpeningChoice solve_opening(const BipointPair& bp, const Clustering& cl, FallbackRule rule);

// Same program as a dense LP (variables [theta, z...]) for an independent
// solver route; objective omits the constant term, returned separately.
DenseLP build_opening_lp(const BipointPair& bp, const Clustering& cl, FallbackRule rule,
                         double* constant);

enum class RoundingMode { Basic, Improved };

struct RoundPolicy {
  PairKey key = PairKey::SumOfBoth;
  FallbackRule fallback = FallbackRule::SiblingPath;
  double t2_shortcut_b = 0.5;  // open T2 outright when b is at least this
  RoundingMode mode = RoundingMode::Improved;
};

struct BipointRound {
  Solution sol;  // centers plus nearest assignment; cost left to the caller
  bool t2_shortcut = false;
  Clustering clustering;
  OpeningChoice opening;
  double frac_bound = 0.0;  // value of the opening program at theta = z = a
};

// Rounds the bipoint pair into at most k centers and self-checks the
// per-client guarantees implied by the opening choice (CertificateError on
// violation). `proxy` must be the spec the ascent ran with.
BipointRound round_bipoint(const MetricInstance& inst, const ProxySpec& proxy,
                           const BipointPair& bp, const RoundPolicy& policy);

}  // namespace ordkm
