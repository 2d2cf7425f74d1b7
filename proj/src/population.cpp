#include "spn/population.hpp"

#include <exception>
#include <omp.h>

#include "spn/error.hpp"

namespace spn {

EnvPool::EnvPool(const EnvFactory& factory, int workers) {
  const int n = resolve_workers(workers);
  envs_.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) envs_.push_back(factory());
  envs_.front()->spec().validate();
}

int resolve_workers(int requested) {
  return requested >= 1 ? requested : omp_get_max_threads();
}

EpisodeOutcome run_episode(const SpikingPolicy& policy, Environment& env,
                           std::uint64_t env_seed) {
  const ActionKind kind = env.spec().action_kind;
  SpikeTally tally;
  auto act = [&](std::span<const double> obs) {
    auto [action, t] = policy.act(obs, kind);
    tally += t;
    return action;
  };
  Episode ep = rollout(act, env, env_seed);
  return {ep.total_return, ep.length, tally};
}

std::vector<EpisodeOutcome> run_episodes_serial(std::span<const SpikingPolicy> policies,
                                                std::span<const EpisodeJob> jobs,
                                                Environment& env) {
  std::vector<EpisodeOutcome> out;
  out.reserve(jobs.size());
  for (const EpisodeJob& job : jobs) {
    out.push_back(run_episode(policies[job.policy], env, job.env_seed));
  }
  return out;
}

std::vector<EpisodeOutcome> run_episodes_parallel(std::span<const SpikingPolicy> policies,
                                                  std::span<const EpisodeJob> jobs,
                                                  EnvPool& pool) {
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
  std::vector<EpisodeOutcome> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

#pragma omp parallel num_threads(pool.size())
  {
    Environment& env = pool[omp_get_thread_num()];
    bool healthy = true;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      if (!healthy) continue;
      try {
        out[std::size_t(i)] = run_episode(policies[jobs[std::size_t(i)].policy], env,
                                          jobs[std::size_t(i)].env_seed);
      } catch (...) {
        errors[std::size_t(i)] = std::current_exception();
        healthy = false;
      }
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace spn
