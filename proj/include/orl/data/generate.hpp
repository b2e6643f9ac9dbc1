#pragma once

#include "orl/agents/experts.hpp"
#include "orl/data/dataset.hpp"
#include "orl/env/env.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace orl {

struct StopCondition {
    enum class Kind { kEpisodes, kTransitions } kind = Kind::kEpisodes;
    uint64_t n = 0;

    static StopCondition episodes(uint64_t n) { return {Kind::kEpisodes, n}; }
    static StopCondition transitions(uint64_t n) { return {Kind::kTransitions, n}; }
};

/// Uniform-random policy for the given action space.
inline Policy random_policy(const ActionSpace& space) {
    Policy p;
    p.space = space;
    if (space.discrete) {
        int n = space.n;
        p.act_discrete = [n](const Env&, Rng& rng) { return rng.uniform_int(n); };
    } else {
        ActionSpace sp = space;
        p.act_continuous = [sp](const Env&, Rng& rng) {
            Vec a(sp.dim);
            for (int i = 0; i < sp.dim; ++i) a(i) = rng.uniform(sp.low, sp.high);
            return a;
        };
    }
    return p;
}

/// With probability eps a uniform-random action replaces the base policy's
/// action, independently per step.
inline Policy eps_greedy(const Policy& base, double eps) {
    ORL_REQUIRE(eps >= 0.0 && eps <= 1.0, "eps_greedy: eps must be in [0, 1]");
    Policy p;
    p.space = base.space;
    if (base.space.discrete) {
        int n = base.space.n;
        auto act = base.act_discrete;
        p.act_discrete = [act, eps, n](const Env& env, Rng& rng) {
            int a = act(env, rng);
            if (eps > 0.0 && rng.uniform() < eps) a = rng.uniform_int(n);
            return a;
        };
    } else {
        ActionSpace sp = base.space;
        auto act = base.act_continuous;
        p.act_continuous = [act, eps, sp](const Env& env, Rng& rng) {
            Vec a = act(env, rng);
            if (eps > 0.0 && rng.uniform() < eps)
                for (int i = 0; i < sp.dim; ++i) a(i) = rng.uniform(sp.low, sp.high);
            return a;
        };
    }
    return p;
}

/// Rolls the policy in the environment until the stop condition is met.
/// Episodes are never cut mid-way: a transition-count stop rounds up to the
/// end of the current episode.
inline OfflineDataset collect(Env env, const Policy& policy, StopCondition stop, uint64_t seed,
                              json generator = json::object()) {
    ORL_REQUIRE(policy.space == env.action_space(), "collect: policy/env action space mismatch");
    Rng rng(seed);
    std::vector<Transition> transitions;
    uint64_t episodes = 0;
    auto want_more = [&]() {
        return stop.kind == StopCondition::Kind::kEpisodes ? episodes < stop.n
                                                           : transitions.size() < stop.n;
    };
    while (want_more()) {
        Vec obs = env.reset(rng);
        uint32_t t = 0;
        while (!env.done()) {
            Transition tr;
            tr.obs = obs;
            EnvStepOut out;
            if (policy.space.discrete) {
                tr.action_d = policy.act_discrete(env, rng);
                out = env.step_discrete(tr.action_d);
            } else {
                tr.action_c = policy.act_continuous(env, rng);
                out = env.step_continuous(tr.action_c);
            }
            tr.reward = out.reward;
            tr.next_obs = out.obs;
            tr.done = out.done;
            tr.episode_id = static_cast<uint32_t>(episodes);
            tr.t = t++;
            transitions.push_back(std::move(tr));
            obs = out.obs;
        }
        episodes += 1;
    }
    DatasetManifest m;
    m.env_id = env.id();
    m.obs_dim = env.obs_dim();
    m.action_space = env.action_space();
    m.n_transitions = transitions.size();
    m.n_episodes = episodes;
    m.generator = std::move(generator);
    m.seed = seed;
    return OfflineDataset(std::move(m), std::move(transitions));
}

/// Experiment 1 protocol: epsilon-greedy expert on Empty-Random-6x6.
inline OfflineDataset make_eps_greedy_dataset(const Policy& expert, double eps,
                                              uint64_t n_episodes, uint64_t seed) {
    json gen;
    gen["protocol"] = "eps_greedy_expert";
    gen["eps"] = eps;
    gen["n_episodes"] = n_episodes;
    return collect(Env::make("grid/empty6x6"), eps_greedy(expert, eps),
                   StopCondition::episodes(n_episodes), seed, gen);
}

inline OfflineDataset make_eps_greedy_dataset(double eps, uint64_t n_episodes, uint64_t seed) {
    return make_eps_greedy_dataset(EmptyGridExpert{}.as_policy(), eps, n_episodes, seed);
}

/// Experiment 2 protocol: fully random agent on the lava grid.
inline OfflineDataset make_random_lava_dataset(uint64_t n_episodes, uint64_t seed) {
    Env env = Env::make("grid/distshift");
    json gen;
    gen["protocol"] = "random";
    gen["n_episodes"] = n_episodes;
    return collect(std::move(env), random_policy(ActionSpace{true, kNumGridActions, 0, 0, 0}),
                   StopCondition::episodes(n_episodes), seed, gen);
}

/// Experiment 3 protocol: 20% of episodes from expert A, 80% from expert B,
/// both eps-greedy with eps = 0.1, interleaved deterministically by seed.
inline OfflineDataset make_multimodal_dataset(const Policy& expert_a, const Policy& expert_b,
                                              uint64_t n_episodes, uint64_t seed) {
    Env env = Env::make("grid/distshift");
    Rng rng(seed);
    uint64_t n_a = n_episodes / 5;
    std::vector<uint8_t> use_a(n_episodes, 0);
    for (uint64_t i = 0; i < n_a; ++i) use_a[i] = 1;
    for (uint64_t i = n_episodes; i > 1; --i)
        std::swap(use_a[i - 1], use_a[static_cast<size_t>(rng.uniform_int(static_cast<int>(i)))]);

    Policy a = eps_greedy(expert_a, 0.1);
    Policy b = eps_greedy(expert_b, 0.1);
    std::vector<Transition> transitions;
    for (uint64_t ep = 0; ep < n_episodes; ++ep) {
        const Policy& pi = use_a[ep] ? a : b;
        Vec obs = env.reset(rng);
        uint32_t t = 0;
        while (!env.done()) {
            Transition tr;
            tr.obs = obs;
            tr.action_d = pi.act_discrete(env, rng);
            EnvStepOut out = env.step_discrete(tr.action_d);
            tr.reward = out.reward;
            tr.next_obs = out.obs;
            tr.done = out.done;
            tr.episode_id = static_cast<uint32_t>(ep);
            tr.t = t++;
            transitions.push_back(std::move(tr));
            obs = out.obs;
        }
    }
    DatasetManifest m;
    m.env_id = env.id();
    m.obs_dim = env.obs_dim();
    m.action_space = env.action_space();
    m.n_transitions = transitions.size();
    m.n_episodes = n_episodes;
    m.generator["protocol"] = "multimodal";
    m.generator["n_episodes"] = n_episodes;
    m.generator["expert_a_episodes"] = n_a;
    m.generator["eps"] = 0.1;
    m.seed = seed;
    return OfflineDataset(std::move(m), std::move(transitions));
}

/// Trains the two lava-grid experts and builds the multi-modal dataset.
inline OfflineDataset make_multimodal_dataset(uint64_t n_episodes, uint64_t seed) {
    GridEnvConfig cfg = GridEnvConfig::dist_shift();
    TabularPolicy a = tabular_expert(cfg, TabularUpdate::kQGreedy,
                                     TabularTrainCfg::defaults_for(TabularUpdate::kQGreedy), 101);
    TabularPolicy b = tabular_expert(cfg, TabularUpdate::kSarsaHighEps,
                                     TabularTrainCfg::defaults_for(TabularUpdate::kSarsaHighEps), 202);
    return make_multimodal_dataset(a.as_policy(), b.as_policy(), n_episodes, seed);
}

enum class MazeQuality { kRandom, kMedium, kExpert };

inline const char* maze_quality_name(MazeQuality q) {
    switch (q) {
        case MazeQuality::kRandom: return "random";
        case MazeQuality::kMedium: return "medium";
        default: return "expert";
    }
}

/// Continuous-control protocol on PointMaze. Random = uniform actions,
/// expert = waypoint controller, medium = expert with Gaussian action noise
/// (sigma 0.05) plus 20% uniform-random steps.
inline OfflineDataset make_pointmaze_dataset(MazeQuality quality, uint64_t n_transitions,
                                             uint64_t seed) {
    Env env = Env::make("maze/point-v0");
    ActionSpace space = env.action_space();
    Policy pi;
    switch (quality) {
        case MazeQuality::kRandom:
            pi = random_policy(space);
            break;
        case MazeQuality::kExpert:
            pi = PointMazeExpert{}.as_policy();
            break;
        case MazeQuality::kMedium: {
            Policy base = PointMazeExpert{}.as_policy();
            auto act = base.act_continuous;
            ActionSpace sp = space;
            pi.space = space;
            pi.act_continuous = [act, sp](const Env& e, Rng& rng) {
                if (rng.uniform() < 0.2) {
                    Vec a(sp.dim);
                    for (int i = 0; i < sp.dim; ++i) a(i) = rng.uniform(sp.low, sp.high);
                    return a;
                }
                Vec a = act(e, rng);
                for (int i = 0; i < sp.dim; ++i)
                    a(i) = std::clamp(a(i) + rng.normal(0.0, 0.05), sp.low, sp.high);
                return a;
            };
            break;
        }
    }
    json gen;
    gen["protocol"] = "continuous_quality";
    gen["quality"] = maze_quality_name(quality);
    gen["n_transitions"] = n_transitions;
    return collect(std::move(env), pi, StopCondition::transitions(n_transitions), seed, gen);
}

}  // namespace orl
