#pragma once

#include "orl/common.hpp"
#include "orl/rng.hpp"

#include <string>
#include <utility>
#include <vector>

namespace orl {

// Cell contents; kAgent only appears in observations, never in the map.
enum Cell : uint8_t { kEmpty = 0, kWall = 1, kGoal = 2, kLava = 3, kAgent = 4 };

enum class GridAction : int { kLeft = 0, kRight = 1, kForward = 2 };
constexpr int kNumGridActions = 3;

// Facing directions: 0 = east, 1 = south, 2 = west, 3 = north.
inline int dir_dx(int dir) { return dir == 0 ? 1 : (dir == 2 ? -1 : 0); }
inline int dir_dy(int dir) { return dir == 1 ? 1 : (dir == 3 ? -1 : 0); }

struct GridEnvConfig {
    std::string id;
    int width = 0;
    int height = 0;
    std::vector<uint8_t> cells;  // row-major width*height map of Cell
    int goal_x = 0, goal_y = 0;
    bool random_start = true;
    int start_x = 1, start_y = 1, start_dir = 0;
    int t_max = 500;

    uint8_t cell(int x, int y) const { return cells[static_cast<size_t>(y) * width + x]; }
    uint8_t& cell(int x, int y) { return cells[static_cast<size_t>(y) * width + x]; }

    void validate() const {
        ORL_REQUIRE(width >= 3 && height >= 3, "GridEnvConfig: grid too small");
        ORL_REQUIRE(cells.size() == static_cast<size_t>(width) * height, "GridEnvConfig: cell count");
        ORL_REQUIRE(t_max >= 1, "GridEnvConfig: t_max must be >= 1");
        ORL_REQUIRE(cell(goal_x, goal_y) == kGoal, "GridEnvConfig: goal cell mismatch");
    }

    int obs_dim() const { return width * height * 3; }

    /// Cells an agent may stand on (not wall, lava or goal).
    std::vector<std::pair<int, int>> free_cells() const {
        std::vector<std::pair<int, int>> out;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                if (cell(x, y) == kEmpty) out.emplace_back(x, y);
        return out;
    }

    std::string render_ascii() const {
        std::string s;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                switch (cell(x, y)) {
                    case kWall: s += '#'; break;
                    case kGoal: s += 'G'; break;
                    case kLava: s += '~'; break;
                    default: s += '.'; break;
                }
            }
            s += '\n';
        }
        return s;
    }

    /// MiniGrid Empty-Random-6x6: 6x6 grid with wall border, 4x4 interior,
    /// goal at the bottom-right interior cell, random start cell and facing.
    static GridEnvConfig empty_random_6x6() {
        GridEnvConfig c;
        c.id = "grid/empty6x6";
        c.width = 6;
        c.height = 6;
        c.cells.assign(36, kEmpty);
        for (int x = 0; x < 6; ++x) { c.cell(x, 0) = kWall; c.cell(x, 5) = kWall; }
        for (int y = 0; y < 6; ++y) { c.cell(0, y) = kWall; c.cell(5, y) = kWall; }
        c.goal_x = 4; c.goal_y = 4;
        c.cell(4, 4) = kGoal;
        c.random_start = true;
        return c;
    }

    /// MiniGrid DistShift1: 9x7 grid, lava block at x in {3,4,5}, y in {1,2},
    /// fixed start top-left facing east, goal top-right. Shortest path to the
    /// goal is 13 actions (turns included), the wide berth along the bottom
    /// row takes 17.
    static GridEnvConfig dist_shift() {
        GridEnvConfig c;
        c.id = "grid/distshift";
        c.width = 9;
        c.height = 7;
        c.cells.assign(63, kEmpty);
        for (int x = 0; x < 9; ++x) { c.cell(x, 0) = kWall; c.cell(x, 6) = kWall; }
        for (int y = 0; y < 7; ++y) { c.cell(0, y) = kWall; c.cell(8, y) = kWall; }
        for (int x = 3; x <= 5; ++x) { c.cell(x, 1) = kLava; c.cell(x, 2) = kLava; }
        c.goal_x = 7; c.goal_y = 1;
        c.cell(7, 1) = kGoal;
        c.random_start = false;
        c.start_x = 1; c.start_y = 1; c.start_dir = 0;
        return c;
    }
};

struct GridState {
    int x = 0, y = 0;
    int dir = 0;
    int t = 0;
    bool done = false;
};

/// Success reward: 1 - 0.9 * t / T_max. Calibrated so datasets reproduce the
/// reported per-epsilon means (e.g. t=6 -> 0.98920, t=113.32 -> 0.796).
inline double grid_reward(int t, int t_max) {
    return 1.0 - 0.9 * static_cast<double>(t) / static_cast<double>(t_max);
}

/// Flat width*height*3 observation. Channels per cell: object id
/// (empty/wall/goal/lava/agent), auxiliary id (reserved, 0), and the agent's
/// facing direction on the agent's cell. Injective over (cell, dir).
inline Vec encode_grid_obs(const GridEnvConfig& cfg, const GridState& s) {
    Vec obs = Vec::Zero(cfg.obs_dim());
    for (int y = 0; y < cfg.height; ++y) {
        for (int x = 0; x < cfg.width; ++x) {
            obs(3 * (y * cfg.width + x)) = static_cast<double>(cfg.cell(x, y));
        }
    }
    int a = 3 * (s.y * cfg.width + s.x);
    obs(a) = static_cast<double>(kAgent);
    obs(a + 2) = static_cast<double>(s.dir);
    return obs;
}

/// Recovers (x, y, dir) from an encoded grid observation.
inline GridState decode_grid_obs(const GridEnvConfig& cfg, const Vec& obs) {
    ORL_REQUIRE(obs.size() == cfg.obs_dim(), "decode_grid_obs: dim mismatch");
    for (int y = 0; y < cfg.height; ++y)
        for (int x = 0; x < cfg.width; ++x)
            if (obs(3 * (y * cfg.width + x)) == static_cast<double>(kAgent)) {
                GridState s;
                s.x = x;
                s.y = y;
                s.dir = static_cast<int>(obs(3 * (y * cfg.width + x) + 2));
                return s;
            }
    throw Error("decode_grid_obs: no agent cell found");
}

inline std::pair<GridState, Vec> grid_reset(const GridEnvConfig& cfg, Rng& rng) {
    GridState s;
    if (cfg.random_start) {
        auto free = cfg.free_cells();
        auto [x, y] = free[static_cast<size_t>(rng.uniform_int(static_cast<int>(free.size())))];
        s.x = x;
        s.y = y;
        s.dir = rng.uniform_int(4);
    } else {
        s.x = cfg.start_x;
        s.y = cfg.start_y;
        s.dir = cfg.start_dir;
    }
    s.t = 0;
    s.done = false;
    return {s, encode_grid_obs(cfg, s)};
}

struct GridStepResult {
    GridState state;
    Vec obs;
    double reward = 0.0;
    bool done = false;
};

inline GridStepResult grid_step(const GridEnvConfig& cfg, const GridState& state, GridAction action) {
    ORL_REQUIRE(!state.done, "grid_step: episode already finished");
    GridState s = state;
    s.t += 1;
    double reward = 0.0;
    switch (action) {
        case GridAction::kLeft: s.dir = (s.dir + 3) % 4; break;
        case GridAction::kRight: s.dir = (s.dir + 1) % 4; break;
        case GridAction::kForward: {
            int nx = s.x + dir_dx(s.dir);
            int ny = s.y + dir_dy(s.dir);
            uint8_t target = cfg.cell(nx, ny);
            if (target != kWall) {
                s.x = nx;
                s.y = ny;
            }
            if (target == kGoal) {
                s.done = true;
                reward = grid_reward(s.t, cfg.t_max);
            } else if (target == kLava) {
                s.done = true;
            }
            break;
        }
    }
    if (!s.done && s.t >= cfg.t_max) s.done = true;
    GridStepResult r;
    r.state = s;
    r.obs = encode_grid_obs(cfg, s);
    r.reward = reward;
    r.done = s.done;
    return r;
}

}  // namespace orl
