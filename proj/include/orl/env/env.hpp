#pragma once

#include "orl/env/grid.hpp"
#include "orl/env/pointmaze.hpp"

#include <functional>
#include <string>
#include <variant>

namespace orl {

struct ActionSpace {
    bool discrete = true;
    int n = 0;         // discrete action count
    int dim = 0;       // continuous action dimension
    double low = 0.0, high = 0.0;

    bool operator==(const ActionSpace& o) const {
        return discrete == o.discrete && n == o.n && dim == o.dim && low == o.low && high == o.high;
    }
};

struct EnvStepOut {
    Vec obs;
    double reward = 0.0;
    bool done = false;
};

/// Runtime wrapper over the concrete environments, keyed by id string.
/// One instance per rollout; no shared state.
class Env {
public:
    static Env make(const std::string& id) {
        if (id == "grid/empty6x6") return Env(GridEnvConfig::empty_random_6x6());
        if (id == "grid/distshift") return Env(GridEnvConfig::dist_shift());
        if (id == "maze/point-v0") return Env(PointMazeConfig{});
        throw Error("unknown env id: " + id + " (valid: grid/empty6x6, grid/distshift, maze/point-v0)");
    }

    explicit Env(GridEnvConfig cfg) : cfg_(std::move(cfg)) {}
    explicit Env(PointMazeConfig cfg) : cfg_(std::move(cfg)) {}

    bool is_grid() const { return std::holds_alternative<GridEnvConfig>(cfg_); }

    const std::string& id() const {
        return is_grid() ? std::get<GridEnvConfig>(cfg_).id : std::get<PointMazeConfig>(cfg_).id;
    }

    ActionSpace action_space() const {
        ActionSpace a;
        if (is_grid()) {
            a.discrete = true;
            a.n = kNumGridActions;
        } else {
            const auto& m = std::get<PointMazeConfig>(cfg_);
            a.discrete = false;
            a.dim = 2;
            a.low = -m.action_max;
            a.high = m.action_max;
        }
        return a;
    }

    int obs_dim() const {
        return is_grid() ? std::get<GridEnvConfig>(cfg_).obs_dim() : 2;
    }

    int t_max() const {
        return is_grid() ? std::get<GridEnvConfig>(cfg_).t_max : std::get<PointMazeConfig>(cfg_).t_max;
    }

    Vec reset(Rng& rng) {
        if (is_grid()) {
            auto [s, obs] = grid_reset(std::get<GridEnvConfig>(cfg_), rng);
            grid_state_ = s;
            last_obs_ = obs;
        } else {
            auto [s, obs] = pointmaze_reset(std::get<PointMazeConfig>(cfg_), rng);
            maze_state_ = s;
            last_obs_ = obs;
        }
        return last_obs_;
    }

    EnvStepOut step_discrete(int action) {
        ORL_REQUIRE(is_grid(), "step_discrete on a continuous env");
        auto r = grid_step(std::get<GridEnvConfig>(cfg_), grid_state_, static_cast<GridAction>(action));
        grid_state_ = r.state;
        last_obs_ = r.obs;
        return {r.obs, r.reward, r.done};
    }

    EnvStepOut step_continuous(const Vec& action) {
        ORL_REQUIRE(!is_grid(), "step_continuous on a discrete env");
        ORL_REQUIRE(action.size() == 2, "pointmaze action must be 2-d");
        auto r = pointmaze_step(std::get<PointMazeConfig>(cfg_), maze_state_, action(0), action(1));
        maze_state_ = r.state;
        last_obs_ = r.obs;
        return {r.obs, r.reward, r.done};
    }

    bool done() const { return is_grid() ? grid_state_.done : maze_state_.done; }
    const Vec& last_obs() const { return last_obs_; }

    const GridEnvConfig& grid_config() const { return std::get<GridEnvConfig>(cfg_); }
    const GridState& grid_state() const { return grid_state_; }
    const PointMazeConfig& maze_config() const { return std::get<PointMazeConfig>(cfg_); }
    const PointMazeState& maze_state() const { return maze_state_; }

    std::string render_ascii() const {
        return is_grid() ? std::get<GridEnvConfig>(cfg_).render_ascii()
                         : std::get<PointMazeConfig>(cfg_).render_ascii();
    }

private:
    std::variant<GridEnvConfig, PointMazeConfig> cfg_;
    GridState grid_state_;
    PointMazeState maze_state_;
    Vec last_obs_;
};

/// Behavioural policy used for data collection and evaluation. Discrete
/// policies return an action id, continuous ones a raw action vector.
/// Policies may read the env's state or its last observation.
struct Policy {
    ActionSpace space;
    std::function<int(const Env&, Rng&)> act_discrete;
    std::function<Vec(const Env&, Rng&)> act_continuous;
};

}  // namespace orl
