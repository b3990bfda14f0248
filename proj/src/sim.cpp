#include "dail/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace dail::sim {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream};
    return std::mt19937_64(seq);
}

}  // namespace

void NetworkConfig::validate() const {
    if (n_wbans < 1) throw std::invalid_argument("n_wbans must be >= 1");
    if (sensors_per_wban < 1)
        throw std::invalid_argument("sensors_per_wban must be >= 1");
    if (channels < 1) throw std::invalid_argument("channels must be >= 1");
    if (slots_per_sensor < 1)
        throw std::invalid_argument("slots_per_sensor must be >= 1");
    if (frame_length < 0)
        throw std::invalid_argument("frame_length must be >= 0");
    if (omega < 0.0 || omega > 1.0)
        throw std::invalid_argument("omega must lie in [0,1]");
    if (superframes < 1)
        throw std::invalid_argument("superframes must be >= 1");
    if (energy.retry_limit < 0)
        throw std::invalid_argument("retry limit must be >= 0");
    if (geometry == GeometryMode::kAbstractQ) {
        int max_q = n_wbans * sensors_per_wban - sensors_per_wban;
        if (abstract_q < 0)
            throw std::invalid_argument("abstract Q must be >= 0");
        if (abstract_q > max_q)
            throw std::invalid_argument(
                "abstract Q = " + std::to_string(abstract_q) +
                " exceeds available cross-WBAN sensors " +
                std::to_string(max_q));
    }
}

Network::Network(int n_wbans, int sensors_per_wban)
    : n_wbans_(n_wbans),
      sensors_per_wban_(sensors_per_wban),
      adjacency_(static_cast<std::size_t>(n_wbans) * sensors_per_wban),
      edge_matrix_(static_cast<std::size_t>(n_wbans) * sensors_per_wban *
                       n_wbans * sensors_per_wban,
                   0) {}

void Network::add_edge(int a, int b) {
    if (a == b || wban_of(a) == wban_of(b))
        throw std::invalid_argument("interference edges must be cross-WBAN");
    if (has_edge(a, b)) return;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    edge_matrix_[static_cast<std::size_t>(a) * n_sensors() + b] = 1;
    edge_matrix_[static_cast<std::size_t>(b) * n_sensors() + a] = 1;
    ++n_edges_;
}

bool Network::has_edge(int a, int b) const {
    return edge_matrix_[static_cast<std::size_t>(a) * n_sensors() + b] != 0;
}

bool disk_interference_edge(const Point& sensor_a, const Point& crd_a,
                            const Point& sensor_b, const Point& crd_b,
                            double interference_radius) {
    auto dist2 = [](const Point& p, const Point& q) {
        double dx = p.x - q.x, dy = p.y - q.y;
        return dx * dx + dy * dy;
    };
    double r2 = interference_radius * interference_radius;
    return dist2(sensor_a, crd_b) <= r2 && dist2(sensor_b, crd_a) <= r2;
}

int compute_frame_length(int n_wbans, int slots_per_superframe) {
    if (n_wbans < 1 || slots_per_superframe < 1)
        throw std::invalid_argument("counts must be >= 1");
    return n_wbans <= slots_per_superframe ? slots_per_superframe : n_wbans;
}

namespace {

// Exact-degree cross-WBAN graph: circulant with offsets in [L, S-L],
// then randomized by degree-preserving double-edge swaps.
void build_abstract_q(Network& net, int Q, std::mt19937_64& rng) {
    int L = net.sensors_per_wban();
    int S = net.n_sensors();
    if (Q == 0) return;
    if (static_cast<long long>(S) * Q % 2 != 0)
        throw std::invalid_argument(
            "no Q-regular graph exists: S*Q is odd");

    std::vector<int> offsets;
    int need_pairs = Q / 2;
    bool need_half = (Q % 2 != 0);
    if (need_half && S % 2 != 0)
        throw std::invalid_argument("odd Q requires an even sensor count");
    int half = S / 2;
    for (int d = L; offsets.size() < static_cast<std::size_t>(need_pairs);
         ++d) {
        if (d >= half)
            throw std::invalid_argument(
                "abstract Q too large for the regular construction; "
                "max supported is about N*L - 2*L");
        offsets.push_back(d);
    }
    if (need_half) {
        if (half < L || half > S - L)
            throw std::invalid_argument(
                "odd Q needs the half-offset to be cross-WBAN (N >= 2)");
    }

    for (int s = 0; s < S; ++s) {
        for (int d : offsets) net.add_edge(s, (s + d) % S);
        if (need_half && s < half) net.add_edge(s, s + half);
    }

    // randomize while preserving degrees and the cross-WBAN constraint
    std::vector<std::pair<int, int>> edges;
    for (int s = 0; s < S; ++s)
        for (int n : net.neighbors(s))
            if (s < n) edges.emplace_back(s, n);

    // swaps operate on a scratch copy, the Network is rebuilt afterwards
    std::vector<std::vector<char>> adj(S, std::vector<char>(S, 0));
    for (auto [a, b] : edges) adj[a][b] = adj[b][a] = 1;
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::bernoulli_distribution coin(0.5);
    std::size_t attempts = edges.size() * 8;
    for (std::size_t t = 0; t < attempts; ++t) {
        auto& e1 = edges[pick(rng)];
        auto& e2 = edges[pick(rng)];
        int a = e1.first, b = e1.second, c = e2.first, d = e2.second;
        if (coin(rng)) std::swap(c, d);
        // rewire (a,b),(c,d) -> (a,d),(c,b)
        if (a == c || a == d || b == c || b == d) continue;
        if (adj[a][d] || adj[c][b]) continue;
        if (a / L == d / L || c / L == b / L) continue;
        adj[a][b] = adj[b][a] = 0;
        adj[c][d] = adj[d][c] = 0;
        adj[a][d] = adj[d][a] = 1;
        adj[c][b] = adj[b][c] = 1;
        e1 = {std::min(a, d), std::max(a, d)};
        e2 = {std::min(c, b), std::max(c, b)};
    }

    Network rebuilt(net.n_wbans(), L);
    for (auto [a, b] : edges) rebuilt.add_edge(a, b);
    net = std::move(rebuilt);
}

void build_disk(Network& net, const NetworkConfig& cfg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> in_area(0.0, cfg.area_side);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    int N = cfg.n_wbans, L = cfg.sensors_per_wban;
    net.coordinator_positions.resize(N);
    net.sensor_positions.resize(static_cast<std::size_t>(N) * L);
    for (int w = 0; w < N; ++w) {
        Point crd{in_area(rng), in_area(rng)};
        net.coordinator_positions[w] = crd;
        for (int l = 0; l < L; ++l) {
            double r = cfg.body_radius * std::sqrt(unit(rng));
            double a = angle(rng);
            net.sensor_positions[w * L + l] = {crd.x + r * std::cos(a),
                                               crd.y + r * std::sin(a)};
        }
    }
    for (int a = 0; a < net.n_sensors(); ++a) {
        for (int b = a + 1; b < net.n_sensors(); ++b) {
            if (net.wban_of(a) == net.wban_of(b)) continue;
            if (disk_interference_edge(net.sensor_positions[a],
                                       net.coordinator_positions[net.wban_of(a)],
                                       net.sensor_positions[b],
                                       net.coordinator_positions[net.wban_of(b)],
                                       cfg.interference_radius))
                net.add_edge(a, b);
        }
    }
}

}  // namespace

Network build_network(const NetworkConfig& cfg) {
    cfg.validate();
    Network net(cfg.n_wbans, cfg.sensors_per_wban);
    auto rng = make_engine(cfg.seed, 0xB01D);
    if (cfg.geometry == GeometryMode::kAbstractQ)
        build_abstract_q(net, cfg.abstract_q, rng);
    else
        build_disk(net, cfg, rng);
    return net;
}

Network build_network_from_positions(int n_wbans, int sensors_per_wban,
                                     std::vector<Point> coordinators,
                                     std::vector<Point> sensors,
                                     double interference_radius) {
    Network net(n_wbans, sensors_per_wban);
    if (coordinators.size() != static_cast<std::size_t>(n_wbans) ||
        sensors.size() !=
            static_cast<std::size_t>(n_wbans) * sensors_per_wban)
        throw std::invalid_argument("position counts do not match topology");
    net.coordinator_positions = std::move(coordinators);
    net.sensor_positions = std::move(sensors);
    for (int a = 0; a < net.n_sensors(); ++a)
        for (int b = a + 1; b < net.n_sensors(); ++b) {
            if (net.wban_of(a) == net.wban_of(b)) continue;
            if (disk_interference_edge(
                    net.sensor_positions[a],
                    net.coordinator_positions[net.wban_of(a)],
                    net.sensor_positions[b],
                    net.coordinator_positions[net.wban_of(b)],
                    interference_radius))
                net.add_edge(a, b);
        }
    return net;
}

Schedule assign_dail_schedules(const Network& net,
                               const OrthogonalFamily& family,
                               const NetworkConfig& cfg) {
    cfg.validate();
    int N = net.n_wbans();
    int L = net.sensors_per_wban();
    int FL = cfg.frame_length > 0
                 ? cfg.frame_length
                 : compute_frame_length(N, cfg.slots_per_superframe());
    int q = family.order();
    if (q < FL)
        throw std::invalid_argument("family order " + std::to_string(q) +
                                    " smaller than frame length " +
                                    std::to_string(FL));
    if (L > q)
        throw std::invalid_argument("not enough symbols: L = " +
                                    std::to_string(L) + " > q = " +
                                    std::to_string(q));
    if (cfg.assignment == AssignmentMode::kCoordinatedDistinct &&
        static_cast<std::size_t>(N) > family.size())
        throw std::invalid_argument(
            "coordinated-distinct mode needs N <= family size (" +
            std::to_string(family.size()) + ")");

    auto rng = make_engine(cfg.seed, 0xA551);
    int rows = std::min(cfg.channels, q);

    Schedule sched;
    sched.scheme = Scheme::kDail;
    sched.frame_length = FL;
    sched.channels = rows;
    sched.rectangle_of_wban.resize(N);
    sched.symbol_of_sensor.resize(net.n_sensors());
    sched.hops_of_sensor.resize(net.n_sensors());

    if (cfg.assignment == AssignmentMode::kCoordinatedDistinct) {
        std::vector<int> indices(family.size());
        std::iota(indices.begin(), indices.end(), 0);
        std::shuffle(indices.begin(), indices.end(), rng);
        for (int w = 0; w < N; ++w) sched.rectangle_of_wban[w] = indices[w];
    } else {
        std::uniform_int_distribution<int> pick(
            0, static_cast<int>(family.size()) - 1);
        for (int w = 0; w < N; ++w) sched.rectangle_of_wban[w] = pick(rng);
    }

    // symbols come from the slot-count alphabet (grown to L when a short
    // frame would leave too few), keeping the pattern universe at K per
    // rectangle
    int pool = std::min(q, std::max(L, FL));
    std::vector<int> symbols(pool);
    for (int w = 0; w < N; ++w) {
        LatinRectangle rect =
            cut_rectangle(family.square(sched.rectangle_of_wban[w]), rows, FL,
                          sched.rectangle_of_wban[w]);
        std::iota(symbols.begin(), symbols.end(), 0);
        std::shuffle(symbols.begin(), symbols.end(), rng);
        for (int l = 0; l < L; ++l) {
            int s = w * L + l;
            sched.symbol_of_sensor[s] = symbols[l];
            sched.hops_of_sensor[s] = pattern_of(rect, symbols[l]).hops;
        }
    }
    return sched;
}

Schedule assign_sms_schedules(const Network& net, const NetworkConfig& cfg) {
    cfg.validate();
    int N = net.n_wbans();
    int L = net.sensors_per_wban();
    int FL = cfg.frame_length > 0
                 ? cfg.frame_length
                 : compute_frame_length(N, cfg.slots_per_superframe());
    int M = cfg.channels;
    auto rng = make_engine(cfg.seed, 0x5A55);

    Schedule sched;
    sched.scheme = Scheme::kSms;
    sched.frame_length = FL;
    sched.channels = M;
    sched.hops_of_sensor.resize(net.n_sensors());

    // greedy coloring with random fallback; sensors of one WBAN also hold
    // distinct channels, so the pool is exhausted once the interfering
    // group outgrows M
    std::vector<int> channel(net.n_sensors(), -1);
    std::uniform_int_distribution<int> any_channel(0, M - 1);
    std::vector<char> used(M);
    for (int s = 0; s < net.n_sensors(); ++s) {
        std::fill(used.begin(), used.end(), 0);
        for (int n : net.neighbors(s))
            if (channel[n] >= 0) used[channel[n]] = 1;
        for (int n = (s / L) * L; n < s; ++n)
            if (channel[n] >= 0) used[channel[n]] = 1;
        int c = -1;
        for (int i = 0; i < M; ++i)
            if (!used[i]) {
                c = i;
                break;
            }
        channel[s] = (c >= 0) ? c : any_channel(rng);
    }

    int tx_per_frame = std::min(M, FL);
    for (int s = 0; s < net.n_sensors(); ++s) {
        int start = (s % L) % FL;
        auto& hops = sched.hops_of_sensor[s];
        hops.reserve(tx_per_frame);
        for (int j = 0; j < tx_per_frame; ++j)
            hops.push_back({channel[s], (start + j * L) % FL});
        std::sort(hops.begin(), hops.end());
        hops.erase(std::unique(hops.begin(), hops.end()), hops.end());
        // fill duplicates (FL sharing factors with L) with free slots
        std::vector<char> taken(FL, 0);
        for (const Hop& h : hops) taken[h.slot] = 1;
        for (int slot = 0; hops.size() < static_cast<std::size_t>(tx_per_frame);
             ++slot)
            if (!taken[slot % FL]) {
                taken[slot % FL] = 1;
                hops.push_back({channel[s], slot % FL});
            }
        std::sort(hops.begin(), hops.end());
    }
    return sched;
}

CollisionReport run(const Network& net, const Schedule& schedule,
                    const NetworkConfig& cfg) {
    cfg.validate();
    int S = net.n_sensors();
    if (schedule.hops_of_sensor.size() != static_cast<std::size_t>(S))
        throw std::invalid_argument("schedule does not cover every sensor");
    int FL = schedule.frame_length;

    CollisionReport rep;
    rep.scheme = schedule.scheme;
    rep.omega = cfg.omega;
    rep.n_wbans = net.n_wbans();
    rep.frame_length = FL;
    rep.seed = cfg.seed;
    rep.superframes = cfg.superframes;
    rep.per_sensor_tx.assign(cfg.superframes, std::vector<int>(S, 0));
    rep.per_sensor_collisions.assign(cfg.superframes, std::vector<int>(S, 0));
    rep.per_sensor_pair_events.assign(cfg.superframes, std::vector<int>(S, 0));
    rep.per_sensor_attempts.assign(cfg.superframes, std::vector<int>(S, 0));

    auto rng = make_engine(cfg.seed, 0x5EED);
    std::bernoulli_distribution active(cfg.omega);

    int n_cells = 0;
    for (const auto& hops : schedule.hops_of_sensor)
        for (const Hop& h : hops)
            n_cells = std::max(n_cells, h.channel * FL + h.slot + 1);

    std::vector<std::vector<int>> cell_tx(n_cells);
    std::vector<std::vector<Hop>> active_hops(S);

    for (int frame = 0; frame < cfg.superframes; ++frame) {
        for (auto& cell : cell_tx) cell.clear();
        for (int s = 0; s < S; ++s) {
            active_hops[s].clear();
            for (const Hop& h : schedule.hops_of_sensor[s]) {
                bool fire = cfg.omega >= 1.0 || (cfg.omega > 0.0 && active(rng));
                if (!fire) continue;
                active_hops[s].push_back(h);
                cell_tx[h.channel * FL + h.slot].push_back(s);
            }
        }

        auto& tx = rep.per_sensor_tx[frame];
        auto& coll = rep.per_sensor_collisions[frame];
        auto& pairs = rep.per_sensor_pair_events[frame];
        auto& attempts = rep.per_sensor_attempts[frame];

        for (int s = 0; s < S; ++s) tx[s] = static_cast<int>(active_hops[s].size());

        // collided iff an interference neighbor shares the cell
        auto cell_has_neighbor = [&](int s, int cell) {
            if (cell >= n_cells) return false;
            for (int other : cell_tx[cell])
                if (other != s && net.has_edge(s, other)) return true;
            return false;
        };

        for (int cell = 0; cell < n_cells; ++cell) {
            const auto& txs = cell_tx[cell];
            if (txs.size() < 2) continue;
            for (std::size_t i = 0; i < txs.size(); ++i)
                for (std::size_t j = i + 1; j < txs.size(); ++j)
                    if (net.has_edge(txs[i], txs[j])) {
                        ++pairs[txs[i]];
                        ++pairs[txs[j]];
                    }
        }

        for (int s = 0; s < S; ++s) {
            const auto& sched_hops = schedule.hops_of_sensor[s];
            attempts[s] += static_cast<int>(active_hops[s].size());
            if (sched_hops.empty()) continue;
            for (const Hop& h : active_hops[s]) {
                int cell = h.channel * FL + h.slot;
                if (!cell_has_neighbor(s, cell)) continue;
                ++coll[s];
                // retransmit on the sensor's following pattern hops
                std::size_t base = 0;
                while (base < sched_hops.size() && !(sched_hops[base] == h))
                    ++base;
                bool delivered = false;
                for (int r = 1; r <= cfg.energy.retry_limit && !delivered;
                     ++r) {
                    const Hop& nh =
                        sched_hops[(base + r) % sched_hops.size()];
                    ++attempts[s];
                    delivered =
                        !cell_has_neighbor(s, nh.channel * FL + nh.slot);
                }
            }
            rep.total_tx += tx[s];
            rep.total_collisions += coll[s];
            rep.total_attempts += attempts[s];
        }
    }

    rep.mcp = rep.total_tx > 0
                  ? static_cast<double>(rep.total_collisions) / rep.total_tx
                  : 0.0;
    rep.pc = static_cast<double>(rep.total_attempts) * cfg.energy.e_tx_mw /
             (static_cast<double>(net.n_wbans()) * cfg.superframes);
    return rep;
}

void write_run_csv(std::ostream& out, const CollisionReport& rep) {
    out << "scheme,omega,n_wbans,frame_len,seed,superframe,sensor_id,tx,"
           "collisions,attempts\n";
    int S = rep.per_sensor_tx.empty()
                ? 0
                : static_cast<int>(rep.per_sensor_tx[0].size());
    for (int f = 0; f < rep.superframes; ++f)
        for (int s = 0; s < S; ++s)
            out << scheme_name(rep.scheme) << ',' << rep.omega << ','
                << rep.n_wbans << ',' << rep.frame_length << ',' << rep.seed
                << ',' << f << ',' << s << ',' << rep.per_sensor_tx[f][s]
                << ',' << rep.per_sensor_collisions[f][s] << ','
                << rep.per_sensor_attempts[f][s] << '\n';
}

const char* scheme_name(Scheme s) {
    return s == Scheme::kDail ? "DAIL" : "SMS";
}

}  // namespace dail::sim
