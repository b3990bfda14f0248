#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dail/latin.hpp"

namespace dail::sim {

enum class GeometryMode { kAbstractQ, kDisk };
enum class AssignmentMode { kCoordinatedDistinct, kIidRandom };
enum class Scheme { kDail, kSms };

struct EnergyModel {
    double e_tx_mw = 1.0;  // energy per transmission attempt (mW * slot)
    int retry_limit = 1;   // retransmissions per collided packet
};

struct NetworkConfig {
    int n_wbans = 1;
    int sensors_per_wban = 12;
    int channels = 16;
    int slots_per_sensor = 1;
    int frame_length = 0;  // 0 = derive via compute_frame_length
    double omega = 1.0;
    GeometryMode geometry = GeometryMode::kDisk;
    int abstract_q = 0;            // abstract-Q mode: exact cross-WBAN degree
    double area_side = 10.0;       // disk mode: deployment square (meters)
    double body_radius = 1.0;      // disk mode: sensor spread around Crd
    double interference_radius = 3.0;
    AssignmentMode assignment = AssignmentMode::kIidRandom;
    int superframes = 1000;
    std::uint64_t seed = 1;
    EnergyModel energy;

    void validate() const;
    int slots_per_superframe() const {
        return sensors_per_wban * slots_per_sensor;
    }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Static interference topology: N WBANs of L sensors each plus the
// symmetric cross-WBAN interference edge set.
class Network {
public:
    Network(int n_wbans, int sensors_per_wban);

    int n_wbans() const { return n_wbans_; }
    int sensors_per_wban() const { return sensors_per_wban_; }
    int n_sensors() const { return n_wbans_ * sensors_per_wban_; }
    int wban_of(int sensor) const { return sensor / sensors_per_wban_; }

    // Rejects intra-WBAN pairs; idempotent for repeats.
    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int sensor) const {
        return adjacency_[sensor];
    }
    int degree(int sensor) const {
        return static_cast<int>(adjacency_[sensor].size());
    }
    std::size_t n_edges() const { return n_edges_; }

    std::vector<Point> coordinator_positions;  // empty in abstract mode
    std::vector<Point> sensor_positions;

private:
    int n_wbans_;
    int sensors_per_wban_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<char> edge_matrix_;  // n_sensors x n_sensors
    std::size_t n_edges_ = 0;
};

// Cross-WBAN interference rule for disk geometry: both sensors must lie
// inside the other WBAN's interference disk (centered at its Crd).
bool disk_interference_edge(const Point& sensor_a, const Point& crd_a,
                            const Point& sensor_b, const Point& crd_b,
                            double interference_radius);

// FL = K while N <= K, else FL = N.
int compute_frame_length(int n_wbans, int slots_per_superframe);

// Deterministic for a given cfg.seed.
Network build_network(const NetworkConfig& cfg);

// Explicit-geometry builder for hand-placed scenarios.
Network build_network_from_positions(int n_wbans, int sensors_per_wban,
                                     std::vector<Point> coordinators,
                                     std::vector<Point> sensors,
                                     double interference_radius);

struct Schedule {
    Scheme scheme = Scheme::kDail;
    int frame_length = 0;
    int channels = 0;
    std::vector<int> rectangle_of_wban;           // DAIL: family square index
    std::vector<int> symbol_of_sensor;            // DAIL
    std::vector<std::vector<Hop>> hops_of_sensor; // per-superframe cells
};

// DAIL: one rectangle per WBAN (distinct in coordinated mode, i.i.d. in
// random mode), distinct symbols per sensor, hops from pattern_of.
Schedule assign_dail_schedules(const Network& net, const OrthogonalFamily& family,
                               const NetworkConfig& cfg);

// SMS baseline: greedy conflict-graph coloring with M colors (sensors of
// one WBAN count as mutually conflicting), random fallback once colors run
// out; min(M,FL) static slots per sensor.
Schedule assign_sms_schedules(const Network& net, const NetworkConfig& cfg);

struct CollisionReport {
    Scheme scheme = Scheme::kDail;
    double omega = 1.0;
    int n_wbans = 0;
    int frame_length = 0;
    std::uint64_t seed = 0;
    int superframes = 0;
    // [superframe][sensor]
    std::vector<std::vector<int>> per_sensor_tx;
    std::vector<std::vector<int>> per_sensor_collisions;
    // per-neighbor collision events (a neighbor sharing k active cells
    // contributes k); this is the quantity the per-frame collision bounds
    // constrain, as opposed to collided-transmission counts above
    std::vector<std::vector<int>> per_sensor_pair_events;
    std::vector<std::vector<int>> per_sensor_attempts;
    long long total_tx = 0;
    long long total_collisions = 0;
    long long total_attempts = 0;
    double mcp = 0.0;  // collided transmissions / total transmissions
    double pc = 0.0;   // mean per-WBAN power (mW)
};

CollisionReport run(const Network& net, const Schedule& schedule,
                    const NetworkConfig& cfg);

// Per-run CSV: scheme,omega,n_wbans,frame_len,seed,superframe,sensor_id,
// tx,collisions,attempts
void write_run_csv(std::ostream& out, const CollisionReport& report);

const char* scheme_name(Scheme s);

}  // namespace dail::sim
