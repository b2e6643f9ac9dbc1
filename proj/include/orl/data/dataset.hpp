#pragma once

#include "orl/common.hpp"
#include "orl/env/env.hpp"
#include "orl/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace orl {

using json = nlohmann::ordered_json;

struct Transition {
    Vec obs;
    int action_d = -1;   // discrete action id
    Vec action_c;        // continuous action
    double reward = 0.0;
    Vec next_obs;
    bool done = false;
    uint32_t episode_id = 0;
    uint32_t t = 0;
};

struct DatasetManifest {
    std::string env_id;
    int obs_dim = 0;
    ActionSpace action_space;
    uint64_t n_transitions = 0;
    uint64_t n_episodes = 0;
    json generator;  // protocol descriptor (name + parameters)
    uint64_t seed = 0;

    json to_json() const {
        json a;
        a["discrete"] = action_space.discrete;
        if (action_space.discrete) {
            a["n"] = action_space.n;
        } else {
            a["dim"] = action_space.dim;
            a["low"] = action_space.low;
            a["high"] = action_space.high;
        }
        json j;
        j["env_id"] = env_id;
        j["obs_dim"] = obs_dim;
        j["action_space"] = a;
        j["n_transitions"] = n_transitions;
        j["n_episodes"] = n_episodes;
        j["generator"] = generator;
        j["seed"] = seed;
        return j;
    }

    static DatasetManifest from_json(const json& j) {
        DatasetManifest m;
        m.env_id = j.at("env_id").get<std::string>();
        m.obs_dim = j.at("obs_dim").get<int>();
        const json& a = j.at("action_space");
        m.action_space.discrete = a.at("discrete").get<bool>();
        if (m.action_space.discrete) {
            m.action_space.n = a.at("n").get<int>();
        } else {
            m.action_space.dim = a.at("dim").get<int>();
            m.action_space.low = a.at("low").get<double>();
            m.action_space.high = a.at("high").get<double>();
        }
        m.n_transitions = j.at("n_transitions").get<uint64_t>();
        m.n_episodes = j.at("n_episodes").get<uint64_t>();
        m.generator = j.at("generator");
        m.seed = j.at("seed").get<uint64_t>();
        return m;
    }
};

/// Mini-batch in matrix form (rows = samples).
struct Batch {
    Mat obs;
    Mat next_obs;
    std::vector<int> actions_d;
    Mat actions_c;
    Vec rewards;
    std::vector<uint8_t> done;
    bool discrete = true;

    int size() const { return static_cast<int>(obs.rows()); }
};

struct EpisodeStat {
    double ret = 0.0;
    int length = 0;
};

/// Immutable logged experience plus its manifest.
class OfflineDataset {
public:
    OfflineDataset() = default;
    OfflineDataset(DatasetManifest manifest, std::vector<Transition> transitions)
        : manifest_(std::move(manifest)), transitions_(std::move(transitions)) {
        manifest_.n_transitions = transitions_.size();
        validate_integrity();
    }

    const DatasetManifest& manifest() const { return manifest_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    size_t size() const { return transitions_.size(); }
    bool empty() const { return transitions_.empty(); }

    /// Checks the structural invariants: contiguous episode ids, per-episode
    /// step counters, done flags exactly at trajectory tails, counts in sync.
    void validate_integrity() const {
        ORL_REQUIRE(manifest_.n_transitions == transitions_.size(),
                    "dataset: manifest transition count mismatch");
        uint64_t episodes = 0;
        for (size_t i = 0; i < transitions_.size(); ++i) {
            const Transition& tr = transitions_[i];
            ORL_REQUIRE(tr.obs.size() == manifest_.obs_dim && tr.next_obs.size() == manifest_.obs_dim,
                        "dataset: obs dim mismatch");
            bool tail = (i + 1 == transitions_.size()) || (transitions_[i + 1].episode_id != tr.episode_id);
            bool head = (i == 0) || (transitions_[i - 1].episode_id != tr.episode_id);
            if (head) {
                ORL_REQUIRE(tr.episode_id == episodes, "dataset: episode ids not contiguous");
                ORL_REQUIRE(tr.t == 0, "dataset: episode step counter must start at 0");
                episodes += 1;
            } else {
                ORL_REQUIRE(tr.t == transitions_[i - 1].t + 1, "dataset: step counter must increment by 1");
            }
            ORL_REQUIRE(tr.done == tail, "dataset: done flag must mark exactly the trajectory tail");
        }
        ORL_REQUIRE(manifest_.n_episodes == episodes, "dataset: manifest episode count mismatch");
    }

    std::vector<EpisodeStat> episode_stats() const {
        std::vector<EpisodeStat> out;
        EpisodeStat cur;
        for (size_t i = 0; i < transitions_.size(); ++i) {
            cur.ret += transitions_[i].reward;
            cur.length += 1;
            if (transitions_[i].done) {
                out.push_back(cur);
                cur = EpisodeStat{};
            }
        }
        return out;
    }

    /// I.i.d. uniform sampling with replacement; deterministic per rng state.
    Batch sample_batch(int batch_size, Rng& rng) const {
        ORL_REQUIRE(!transitions_.empty(), "sample_batch: empty dataset");
        ORL_REQUIRE(batch_size >= 1, "sample_batch: batch_size must be >= 1");
        std::vector<size_t> idx(batch_size);
        for (int i = 0; i < batch_size; ++i)
            idx[i] = static_cast<size_t>(rng.uniform_int(static_cast<int>(transitions_.size())));
        return gather(idx);
    }

    Batch gather(const std::vector<size_t>& idx) const {
        Batch b;
        b.discrete = manifest_.action_space.discrete;
        int n = static_cast<int>(idx.size());
        b.obs.resize(n, manifest_.obs_dim);
        b.next_obs.resize(n, manifest_.obs_dim);
        b.rewards.resize(n);
        b.done.resize(n);
        if (b.discrete) {
            b.actions_d.resize(n);
        } else {
            b.actions_c.resize(n, manifest_.action_space.dim);
        }
        for (int i = 0; i < n; ++i) {
            const Transition& tr = transitions_[idx[i]];
            b.obs.row(i) = tr.obs.transpose();
            b.next_obs.row(i) = tr.next_obs.transpose();
            b.rewards(i) = tr.reward;
            b.done[i] = tr.done ? 1 : 0;
            if (b.discrete) {
                b.actions_d[i] = tr.action_d;
            } else {
                b.actions_c.row(i) = tr.action_c.transpose();
            }
        }
        return b;
    }

    /// FNV-1a over the packed record bytes; the same value the file trailer stores.
    uint64_t checksum() const {
        uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](const void* data, size_t n) {
            const auto* b = static_cast<const unsigned char*>(data);
            for (size_t i = 0; i < n; ++i) {
                h ^= b[i];
                h *= 1099511628211ULL;
            }
        };
        for (const Transition& tr : transitions_) {
            mix(tr.obs.data(), sizeof(double) * tr.obs.size());
            if (manifest_.action_space.discrete) {
                uint32_t a = static_cast<uint32_t>(tr.action_d);
                mix(&a, sizeof(a));
            } else {
                mix(tr.action_c.data(), sizeof(double) * tr.action_c.size());
            }
            mix(&tr.reward, sizeof(double));
            mix(tr.next_obs.data(), sizeof(double) * tr.next_obs.size());
            uint8_t d = tr.done ? 1 : 0;
            mix(&d, sizeof(d));
            mix(&tr.episode_id, sizeof(uint32_t));
            mix(&tr.t, sizeof(uint32_t));
        }
        return h;
    }

    void save(const std::string& path) const;
    static OfflineDataset load(const std::string& path);

private:
    DatasetManifest manifest_;
    std::vector<Transition> transitions_;
};

// --- ORLD file format -----------------------------------------------------
//
//   magic "ORLD" | u16 version | u16 flags | u32 manifest_len | manifest JSON
//   | packed records | u64 FNV-1a checksum of the record bytes
//
// Record: obs (d x f64), action (u32 or k x f64), reward (f64),
// next_obs (d x f64), done (u8), episode_id (u32), t (u32). All little-endian.

namespace detail {
constexpr uint16_t kOrldVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    ORL_REQUIRE(in.good(), "ORLD: truncated file");
}
}  // namespace detail

inline void OfflineDataset::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    ORL_REQUIRE(out.good(), "ORLD: cannot open " + path + " for writing");
    out.write("ORLD", 4);
    detail::write_pod(out, detail::kOrldVersion);
    detail::write_pod(out, static_cast<uint16_t>(0));
    std::string manifest = manifest_.to_json().dump();
    detail::write_pod(out, static_cast<uint32_t>(manifest.size()));
    out.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
    for (const Transition& tr : transitions_) {
        out.write(reinterpret_cast<const char*>(tr.obs.data()),
                  static_cast<std::streamsize>(sizeof(double) * tr.obs.size()));
        if (manifest_.action_space.discrete) {
            detail::write_pod(out, static_cast<uint32_t>(tr.action_d));
        } else {
            out.write(reinterpret_cast<const char*>(tr.action_c.data()),
                      static_cast<std::streamsize>(sizeof(double) * tr.action_c.size()));
        }
        detail::write_pod(out, tr.reward);
        out.write(reinterpret_cast<const char*>(tr.next_obs.data()),
                  static_cast<std::streamsize>(sizeof(double) * tr.next_obs.size()));
        detail::write_pod(out, static_cast<uint8_t>(tr.done ? 1 : 0));
        detail::write_pod(out, tr.episode_id);
        detail::write_pod(out, tr.t);
    }
    detail::write_pod(out, checksum());
    ORL_REQUIRE(out.good(), "ORLD: write failed");
}

inline OfflineDataset OfflineDataset::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    ORL_REQUIRE(in.good(), "ORLD: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    ORL_REQUIRE(in.good() && std::memcmp(magic, "ORLD", 4) == 0, "ORLD: bad magic bytes");
    uint16_t version, flags;
    detail::read_pod(in, version);
    detail::read_pod(in, flags);
    ORL_REQUIRE(version == detail::kOrldVersion, "ORLD: unsupported version");
    uint32_t manifest_len;
    detail::read_pod(in, manifest_len);
    std::string manifest_str(manifest_len, '\0');
    in.read(manifest_str.data(), manifest_len);
    ORL_REQUIRE(in.good(), "ORLD: truncated manifest");
    DatasetManifest manifest = DatasetManifest::from_json(json::parse(manifest_str));
    std::vector<Transition> transitions;
    transitions.reserve(manifest.n_transitions);
    for (uint64_t i = 0; i < manifest.n_transitions; ++i) {
        Transition tr;
        tr.obs.resize(manifest.obs_dim);
        in.read(reinterpret_cast<char*>(tr.obs.data()),
                static_cast<std::streamsize>(sizeof(double) * manifest.obs_dim));
        if (manifest.action_space.discrete) {
            uint32_t a;
            detail::read_pod(in, a);
            tr.action_d = static_cast<int>(a);
        } else {
            tr.action_c.resize(manifest.action_space.dim);
            in.read(reinterpret_cast<char*>(tr.action_c.data()),
                    static_cast<std::streamsize>(sizeof(double) * manifest.action_space.dim));
        }
        detail::read_pod(in, tr.reward);
        tr.next_obs.resize(manifest.obs_dim);
        in.read(reinterpret_cast<char*>(tr.next_obs.data()),
                static_cast<std::streamsize>(sizeof(double) * manifest.obs_dim));
        uint8_t done;
        detail::read_pod(in, done);
        tr.done = done != 0;
        detail::read_pod(in, tr.episode_id);
        detail::read_pod(in, tr.t);
        ORL_REQUIRE(in.good(), "ORLD: truncated records");
        transitions.push_back(std::move(tr));
    }
    OfflineDataset ds(std::move(manifest), std::move(transitions));
    uint64_t stored;
    detail::read_pod(in, stored);
    ORL_REQUIRE(stored == ds.checksum(), "ORLD: checksum failure");
    return ds;
}

}  // namespace orl
