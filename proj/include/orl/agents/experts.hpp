#pragma once

#include "orl/env/env.hpp"
#include "orl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace orl {

// --- scripted Empty-6x6 expert ---------------------------------------------

enum class TurnStyle { kLeftOnly, kRightOnly, kShortest };

/// Deterministic navigator for the empty grid: walk east until the goal
/// column, then south, re-orienting one turn per step. The default
/// left-only re-orientation spends a few extra turns, which matches the
/// slightly sub-optimal trained expert the dataset statistics assume
/// (mean episode length around 6 from random starts).
struct EmptyGridExpert {
    int goal_x = 4, goal_y = 4;
    TurnStyle style = TurnStyle::kLeftOnly;

    int act(const GridState& s) const {
        int target = s.x < goal_x ? 0 /*east*/ : 1 /*south*/;
        if (s.dir == target) return static_cast<int>(GridAction::kForward);
        int left_turns = (s.dir - target + 4) % 4;  // left turns to align
        switch (style) {
            case TurnStyle::kLeftOnly: return static_cast<int>(GridAction::kLeft);
            case TurnStyle::kRightOnly: return static_cast<int>(GridAction::kRight);
            case TurnStyle::kShortest:
                return static_cast<int>(left_turns <= 2 ? GridAction::kLeft : GridAction::kRight);
        }
        return static_cast<int>(GridAction::kForward);
    }

    Policy as_policy() const {
        Policy p;
        p.space = ActionSpace{true, kNumGridActions, 0, 0, 0};
        EmptyGridExpert self = *this;
        p.act_discrete = [self](const Env& env, Rng&) { return self.act(env.grid_state()); };
        return p;
    }
};

// --- tabular experts --------------------------------------------------------

enum class TabularUpdate { kQGreedy, kSarsaHighEps };

struct TabularTrainCfg {
    int episodes = 40000;
    double lr = 0.15;
    double gamma = 0.99;
    double eps = 0.3;  // behaviour exploration; 0.4 for the SARSA safe expert

    static TabularTrainCfg defaults_for(TabularUpdate u) {
        TabularTrainCfg c;
        if (u == TabularUpdate::kSarsaHighEps) {
            c.eps = 0.4;
            c.episodes = 60000;
        }
        return c;
    }
};

/// Greedy policy table over (x, y, dir) states.
struct TabularPolicy {
    int width = 0, height = 0;
    std::vector<int> best;

    int state_index(const GridState& s) const { return (s.y * width + s.x) * 4 + s.dir; }
    int act(const GridState& s) const { return best[state_index(s)]; }

    Policy as_policy() const {
        Policy p;
        p.space = ActionSpace{true, kNumGridActions, 0, 0, 0};
        TabularPolicy self = *this;
        p.act_discrete = [self](const Env& env, Rng&) { return self.act(env.grid_state()); };
        return p;
    }
};

/// Length of the greedy rollout from the fixed start; -1 if the goal is not
/// reached with positive reward.
inline int greedy_rollout_length(const GridEnvConfig& cfg, const TabularPolicy& pi, uint64_t seed = 0) {
    Rng rng(seed);
    auto [s, obs] = grid_reset(cfg, rng);
    while (!s.done) {
        auto r = grid_step(cfg, s, static_cast<GridAction>(pi.act(s)));
        s = r.state;
        if (r.done) return r.reward > 0.0 ? s.t : -1;
    }
    return -1;
}

/// Trains a tabular expert with either greedy Q-learning updates (converges
/// to the shortest path) or on-policy SARSA with high epsilon (converges to
/// a path that keeps a margin from lava). Throws if the greedy policy fails
/// to reach the goal after the training budget.
inline TabularPolicy tabular_expert(const GridEnvConfig& cfg, TabularUpdate update,
                                    const TabularTrainCfg& train_cfg, uint64_t seed) {
    int n_states = cfg.width * cfg.height * 4;
    std::vector<double> q(static_cast<size_t>(n_states) * kNumGridActions, 0.0);
    auto sidx = [&cfg](const GridState& s) { return (s.y * cfg.width + s.x) * 4 + s.dir; };
    auto qrow = [&q](int si) { return q.data() + static_cast<size_t>(si) * kNumGridActions; };
    auto argmax = [](const double* row) {
        int best = 0;
        for (int a = 1; a < kNumGridActions; ++a)
            if (row[a] > row[best]) best = a;
        return best;
    };
    Rng rng(seed);
    for (int ep = 0; ep < train_cfg.episodes; ++ep) {
        auto [s, obs] = grid_reset(cfg, rng);
        int si = sidx(s);
        int a = rng.uniform() < train_cfg.eps ? rng.uniform_int(kNumGridActions) : argmax(qrow(si));
        while (!s.done) {
            auto r = grid_step(cfg, s, static_cast<GridAction>(a));
            int si2 = sidx(r.state);
            double target;
            int a2 = -1;
            if (r.done) {
                target = r.reward;
            } else if (update == TabularUpdate::kQGreedy) {
                target = r.reward + train_cfg.gamma * qrow(si2)[argmax(qrow(si2))];
            } else {
                a2 = rng.uniform() < train_cfg.eps ? rng.uniform_int(kNumGridActions) : argmax(qrow(si2));
                target = r.reward + train_cfg.gamma * qrow(si2)[a2];
            }
            qrow(si)[a] += train_cfg.lr * (target - qrow(si)[a]);
            s = r.state;
            si = si2;
            if (update == TabularUpdate::kSarsaHighEps) {
                a = a2 >= 0 ? a2 : 0;
            } else {
                a = rng.uniform() < train_cfg.eps ? rng.uniform_int(kNumGridActions) : argmax(qrow(si));
            }
        }
    }
    TabularPolicy pi;
    pi.width = cfg.width;
    pi.height = cfg.height;
    pi.best.resize(n_states);
    for (int si = 0; si < n_states; ++si) pi.best[si] = argmax(qrow(si));
    if (greedy_rollout_length(cfg, pi) < 0)
        throw Error("tabular_expert: greedy policy does not reach the goal after training budget");
    return pi;
}

// --- PointMaze expert -------------------------------------------------------

/// Waypoint controller through the maze: down the middle corridor, under the
/// right wall, up the right corridor into the exit square.
struct PointMazeExpert {
    std::vector<std::pair<double, double>> waypoints = {
        {0.0, -0.55}, {0.70, -0.55}, {0.70, 0.90}, {0.80, 0.90}};
    double reach_tol = 0.08;
    double gain = 3.0;
    double action_max = 0.1;

    Vec act(const PointMazeState& s) const {
        size_t wp = 0;
        // pick the first waypoint not yet reached, skipping any already behind us
        while (wp + 1 < waypoints.size() && passed(s, wp)) ++wp;
        double tx = waypoints[wp].first - s.x;
        double ty = waypoints[wp].second - s.y;
        Vec a(2);
        a << std::clamp(gain * tx, -action_max, action_max),
             std::clamp(gain * ty, -action_max, action_max);
        return a;
    }

    bool passed(const PointMazeState& s, size_t wp) const {
        double dx = waypoints[wp].first - s.x;
        double dy = waypoints[wp].second - s.y;
        if (std::sqrt(dx * dx + dy * dy) < reach_tol) return true;
        // already past the under-wall passage: no need to go back down
        if (wp == 0 && (s.y < -0.45 || s.x > 0.45)) return true;
        if (wp == 1 && s.x > 0.6) return true;
        return false;
    }

    Policy as_policy() const {
        Policy p;
        p.space = ActionSpace{false, 0, 2, -action_max, action_max};
        PointMazeExpert self = *this;
        p.act_continuous = [self](const Env& env, Rng&) { return self.act(env.maze_state()); };
        return p;
    }
};

}  // namespace orl
