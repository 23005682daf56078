#include "mres/resistance.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

namespace mres {

namespace {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::vector<int>> choose(const std::vector<int>& items, std::size_t size) {
  std::vector<std::vector<int>> out;
  if (size > items.size()) return out;
  std::vector<bool> pick(items.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
  do {
    std::vector<int> s;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (pick[i]) s.push_back(items[i]);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<int> complement(const std::vector<int>& all, const std::vector<int>& part) {
  std::vector<int> out;
  std::set_difference(all.begin(), all.end(), part.begin(), part.end(), std::back_inserter(out));
  return out;
}

Verdict verdict_for_kept(const State& state, const std::vector<int>& kept,
                         const std::vector<int>& traced, const ToleranceConfig& cfg) {
  ToleranceConfig local = cfg;
  local.seed = subset_seed(cfg.seed, traced);
  return full_verdict(reduce(state.ket, kept), local);
}

std::string subset_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Verdicts for one traced size. `entangled_kept` holds kept sets already known
// to be entangled; supersets of those are filled in without a test.
std::vector<SubsetVerdict> level_verdicts(const State& state, const std::vector<int>& system,
                                          std::size_t t, bool symmetric,
                                          const std::vector<std::vector<int>>* entangled_kept,
                                          const ToleranceConfig& cfg, unsigned threads) {
  std::vector<std::vector<int>> traced_sets;
  if (symmetric)
    traced_sets.emplace_back(system.begin(), system.begin() + static_cast<long>(t));
  else
    traced_sets = choose(system, t);
  std::vector<SubsetVerdict> out(traced_sets.size());
  parallel_for(traced_sets.size(), threads, [&](std::size_t i) {
    const auto kept = complement(system, traced_sets[i]);
    out[i].traced = traced_sets[i];
    if (entangled_kept) {
      for (const auto& e : *entangled_kept)
        if (std::includes(kept.begin(), kept.end(), e.begin(), e.end())) {
          out[i].verdict = Entangled{};
          out[i].implied = true;
          return;
        }
    }
    out[i].verdict = verdict_for_kept(state, kept, traced_sets[i], cfg);
  });
  return out;
}

}  // namespace

std::uint64_t subset_seed(std::uint64_t root, std::span<const int> traced) {
  std::uint64_t x = root;
  for (int s : traced) x += std::uint64_t{1} << (s % 64);
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

ResistanceProfile resistance_profile(const State& state, bool symmetric,
                                     const ToleranceConfig& cfg, unsigned threads,
                                     bool use_implied) {
  const auto system = state.system_sites();
  const int n = static_cast<int>(system.size());
  ResistanceProfile prof{n, symmetric, {}};
  std::vector<std::vector<int>> entangled_kept;
  for (int t = n - 2; t >= 1; --t) {
    auto level = level_verdicts(state, system, t, symmetric,
                                use_implied ? &entangled_kept : nullptr, cfg, threads);
    for (const auto& sv : level)
      if (is_entangled(sv.verdict)) entangled_kept.push_back(complement(system, sv.traced));
    prof.levels[t] = std::move(level);
  }
  return prof;
}

ClassifyResult classify(const State& state, const ToleranceConfig& cfg, bool symmetric,
                        unsigned threads) {
  const auto system = state.system_sites();
  const int n = static_cast<int>(system.size());
  ClassifyResult res;
  res.profile = {n, symmetric, {}};
  if (n < 2) {
    res.reason = "need at least two subsystems";
    return res;
  }
  for (int t = n - 2; t >= 0; --t) {
    auto level = level_verdicts(state, system, t, symmetric, nullptr, cfg, threads);
    std::size_t ent = 0, sep = 0;
    const SubsetVerdict* unsure = nullptr;
    for (const auto& sv : level) {
      if (is_entangled(sv.verdict)) ++ent;
      else if (is_separable(sv.verdict)) ++sep;
      else if (!unsure) unsure = &sv;
    }
    const std::string where = " after tracing out " + std::to_string(t) + " subsystem(s)";
    if (unsure) res.reason = "inconclusive verdict" + where + ", traced " + subset_text(unsure->traced);
    else if (ent == level.size()) res.m = t;
    else if (ent > 0) res.reason = "entangled and separable reductions mixed" + where;
    res.profile.levels[t] = std::move(level);
    if (res.m || !res.reason.empty()) return res;
  }
  res.reason = "no entangled reduction: the state is fully separable";
  return res;
}

LinkPolynomial state_to_link_polynomial(const State& state, const ToleranceConfig& cfg,
                                        unsigned threads) {
  const auto system = state.system_sites();
  const int n = static_cast<int>(system.size());
  if (n > kMaxRings) throw std::invalid_argument("too many subsystems for a link polynomial");
  std::vector<std::vector<int>> entangled;
  for (int size = 2; size <= n; ++size) {
    const auto groups = choose(system, size);
    std::vector<int> status(groups.size(), 0);  // 1 entangled, 2 inconclusive
    parallel_for(groups.size(), threads, [&](std::size_t i) {
      for (const auto& e : entangled)
        if (std::includes(groups[i].begin(), groups[i].end(), e.begin(), e.end())) {
          status[i] = 1;
          return;
        }
      const Verdict v = verdict_for_kept(state, groups[i], complement(system, groups[i]), cfg);
      status[i] = is_entangled(v) ? 1 : is_inconclusive(v) ? 2 : 0;
    });
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (status[i] == 2)
        throw std::runtime_error("inconclusive verdict for subsystem " + subset_text(groups[i]));
      if (status[i] == 1) entangled.push_back(groups[i]);
    }
  }
  std::vector<RingMask> masks;
  for (const auto& g : entangled) {
    RingMask m = 0;
    for (int s : g) m |= RingMask{1} << (std::lower_bound(system.begin(), system.end(), s) - system.begin());
    masks.push_back(m);
  }
  return canonicalize(LinkPolynomial(n, std::move(masks)));
}

std::vector<double> default_scan_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(std::numbers::pi * i / 40);
  return g;
}

std::vector<ScanPoint> constellation_scan(int n, int lifted, std::span<const double> thetas,
                                          const ToleranceConfig& cfg, unsigned threads) {
  std::vector<ScanPoint> out(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) {
    const State s{majorana_state(lifted_constellation(n, lifted, thetas[i])), {}};
    out[i] = {thetas[i], classify(s, cfg, true, 1)};
  });
  return out;
}

}  // namespace mres
