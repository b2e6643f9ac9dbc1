#pragma once

#include "orl/common.hpp"
#include "orl/rng.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace orl {

/// Axis-aligned wall rectangle; the open interior is impassable.
struct WallRect {
    double x0, x1, y0, y1;
};

/// Continuous three-corridor maze on [-1, 1]^2.
///
/// Two vertical walls split the square into left / middle / right corridors.
/// The left wall leaves a passage at the top, the right wall at the bottom,
/// so the route from the start region (middle, lower half) to the exit
/// square (top right) runs under the right wall and up the right corridor.
struct PointMazeConfig {
    std::string id = "maze/point-v0";
    double action_max = 0.1;
    int t_max = 200;
    double goal_x = 0.8, goal_y = 0.9;
    double exit_x0 = 0.6, exit_x1 = 1.0, exit_y0 = 0.8, exit_y1 = 1.0;
    double start_x0 = -0.1, start_x1 = 0.1, start_y0 = -0.7, start_y1 = -0.1;
    std::vector<WallRect> walls = {
        {-1.0 / 3.0 - 0.02, -1.0 / 3.0 + 0.02, -1.0, 0.4},   // left wall, gap at top
        {1.0 / 3.0 - 0.02, 1.0 / 3.0 + 0.02, -0.4, 1.0},     // right wall, gap at bottom
    };

    bool in_exit(double x, double y) const {
        return x >= exit_x0 && x <= exit_x1 && y >= exit_y0 && y <= exit_y1;
    }

    std::string render_ascii(int cells = 21) const {
        std::string s;
        for (int r = 0; r < cells; ++r) {
            double y = -1.0 + 2.0 * (r + 0.5) / cells;
            for (int c = 0; c < cells; ++c) {
                double x = -1.0 + 2.0 * (c + 0.5) / cells;
                char ch = '.';
                for (const auto& w : walls)
                    if (x > w.x0 && x < w.x1 && y > w.y0 && y < w.y1) ch = '#';
                if (in_exit(x, y)) ch = 'G';
                if (x >= start_x0 && x <= start_x1 && y >= start_y0 && y <= start_y1) ch = 'o';
                s += ch;
            }
            s += '\n';
        }
        return s;
    }
};

struct PointMazeState {
    double x = 0.0, y = 0.0;
    int t = 0;
    bool done = false;
};

inline Vec pointmaze_obs(const PointMazeState& s) {
    Vec o(2);
    o << s.x, s.y;
    return o;
}

inline std::pair<PointMazeState, Vec> pointmaze_reset(const PointMazeConfig& cfg, Rng& rng) {
    PointMazeState s;
    s.x = rng.uniform(cfg.start_x0, cfg.start_x1);
    s.y = rng.uniform(cfg.start_y0, cfg.start_y1);
    s.t = 0;
    s.done = false;
    return {s, pointmaze_obs(s)};
}

namespace detail {

// Single-axis move with segment-based wall clamping; immune to tunnelling
// because the whole sweep interval is tested, not just the endpoint.
inline double clamp_axis_move(const std::vector<WallRect>& walls, bool horizontal,
                              double from, double to, double other) {
    to = std::clamp(to, -1.0, 1.0);
    for (const auto& w : walls) {
        double lo = horizontal ? w.x0 : w.y0;
        double hi = horizontal ? w.x1 : w.y1;
        double olo = horizontal ? w.y0 : w.x0;
        double ohi = horizontal ? w.y1 : w.x1;
        if (other <= olo || other >= ohi) continue;
        if (to > from) {
            if (from <= lo && to > lo) to = lo;
        } else if (to < from) {
            if (from >= hi && to < hi) to = hi;
        }
    }
    return to;
}

}  // namespace detail

struct PointMazeStepResult {
    PointMazeState state;
    Vec obs;
    double reward = 0.0;
    bool done = false;
};

/// Applies an action with components clipped to +/- action_max, x axis first
/// then y. Reward is the negative squared distance of the new position to
/// the goal coordinates.
inline PointMazeStepResult pointmaze_step(const PointMazeConfig& cfg, const PointMazeState& state,
                                          double ax, double ay) {
    ORL_REQUIRE(!state.done, "pointmaze_step: episode already finished");
    PointMazeState s = state;
    ax = std::clamp(ax, -cfg.action_max, cfg.action_max);
    ay = std::clamp(ay, -cfg.action_max, cfg.action_max);
    s.x = detail::clamp_axis_move(cfg.walls, true, s.x, s.x + ax, s.y);
    s.y = detail::clamp_axis_move(cfg.walls, false, s.y, s.y + ay, s.x);
    s.t += 1;
    double dx = s.x - cfg.goal_x, dy = s.y - cfg.goal_y;
    double reward = -(dx * dx) - (dy * dy);
    if (cfg.in_exit(s.x, s.y) || s.t >= cfg.t_max) s.done = true;
    PointMazeStepResult r;
    r.state = s;
    r.obs = pointmaze_obs(s);
    r.reward = reward;
    r.done = s.done;
    return r;
}

}  // namespace orl
