#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "loopgen/automorphisms.hpp"
#include "loopgen/core.hpp"
#include "loopgen/jump.hpp"
#include "loopgen/oracle.hpp"
#include "loopgen/probability.hpp"
#include "loopgen/subloops.hpp"

namespace loopgen {

struct AnalysisOptions {
  size_t max_subloops = 100000;
  uint64_t search_budget = 50'000'000;
  uint64_t oracle_budget = 100'000'000;
  int threads = 1;
};

/// Lazily built pipeline over one loop: order profile, subloop lattice,
/// automorphisms, orbits, jump constants. Each stage is computed on first
/// use and cached for the lifetime of the object.
class Analysis {
public:
  explicit Analysis(LoopTable loop, AnalysisOptions opt = {})
      : loop_(std::move(loop)), opt_(opt) {}

  const LoopTable& loop() const { return loop_; }
  const AnalysisOptions& options() const { return opt_; }

  const OrderProfile& profile() {
    if (!profile_) profile_ = order_profile(loop_);
    return *profile_;
  }

  const SubloopLattice& lattice() {
    if (!lattice_)
      lattice_ = std::make_unique<SubloopLattice>(
          SubloopLattice::enumerate(loop_, opt_.max_subloops));
    return *lattice_;
  }

  const std::vector<Automorphism>& automorphisms() {
    if (!auts_) {
      AutSearchOptions o;
      o.node_budget = opt_.search_budget;
      auts_ = automorphism_generators(loop_, lattice(), o);
    }
    return *auts_;
  }

  const OrbitPartition& orbits() {
    if (!orbits_) orbits_ = orbit_partition(lattice(), automorphisms());
    return *orbits_;
  }

  const JumpTable& jumps() {
    if (!jumps_)
      jumps_ = compute_jump_table(loop_, profile(), lattice(), orbits(),
                                  opt_.threads);
    return *jumps_;
  }

  GenerationReport generation(int m) {
    return gen_count(jumps(), m, loop_.size(), orbits().bottom_orbit,
                     orbits().top_orbit);
  }

  GenerationReport generation_typed(const OrderType& r) {
    return gen_count_typed(jumps(), r, loop_.size(), orbits().bottom_orbit,
                           orbits().top_orbit);
  }

  OracleResult oracle_exhaustive(int m, std::optional<OrderType> type = {}) {
    OracleOptions o;
    o.budget = opt_.oracle_budget;
    o.threads = opt_.threads;
    return exhaustive_count(loop_, lattice(), profile(), m, std::move(type), o);
  }

  OracleResult oracle_monte_carlo(int m, uint64_t samples, uint64_t seed,
                                  std::optional<OrderType> type = {}) {
    return monte_carlo(loop_, lattice(), profile(), m, samples, seed,
                       std::move(type));
  }

private:
  LoopTable loop_;
  AnalysisOptions opt_;
  std::optional<OrderProfile> profile_;
  std::unique_ptr<SubloopLattice> lattice_;
  std::optional<std::vector<Automorphism>> auts_;
  std::optional<OrbitPartition> orbits_;
  std::optional<JumpTable> jumps_;
};

} // namespace loopgen
