#include <doctest.h>

#include <sstream>

#include "dail/experiments.hpp"

using namespace dail;
using namespace dail::exp;

TEST_CASE("preset definitions") {
    ExperimentPreset e1 = make_preset("exp1");
    CHECK(e1.sweep_var == "n_wbans");
    REQUIRE(e1.sweep_values.size() == 17);
    CHECK(e1.sweep_values.front() == 2);
    CHECK(e1.sweep_values.back() == 34);
    CHECK(e1.base.sensors_per_wban == 12);
    CHECK(e1.base.channels == 16);
    CHECK(e1.base.slots_per_superframe() == 12);
    CHECK(e1.base.superframes == 1000);

    ExperimentPreset e2 = make_preset("exp2");
    CHECK(e2.sweep_var == "frame_len");
    CHECK(e2.base.n_wbans == 30);
    REQUIRE(e2.sweep_values.size() == 10);
    CHECK(e2.sweep_values.front() == 10);
    CHECK(e2.sweep_values.back() == 28);

    ExperimentPreset e3 = make_preset("exp3");
    CHECK(e3.sweep_values == e1.sweep_values);

    CHECK_THROWS_AS(make_preset("exp9"), std::invalid_argument);
}

TEST_CASE("run_single covers both schemes") {
    sim::NetworkConfig cfg = make_preset("exp1").base;
    cfg.n_wbans = 3;
    cfg.superframes = 40;
    cfg.seed = 5;
    sim::CollisionReport dail_rep = run_single(cfg, sim::Scheme::kDail);
    sim::CollisionReport sms_rep = run_single(cfg, sim::Scheme::kSms);
    CHECK(dail_rep.scheme == sim::Scheme::kDail);
    CHECK(sms_rep.scheme == sim::Scheme::kSms);
    CHECK(dail_rep.total_tx > 0);
    CHECK(sms_rep.total_tx > 0);
    CHECK(dail_rep.superframes == 40);
    CHECK(dail_rep.mcp >= 0.0);
    CHECK(dail_rep.mcp <= 1.0);
}

TEST_CASE("collision bound check is clean on a small sweep") {
    ExperimentPreset preset = make_preset("exp1");
    preset.sweep_values = {2, 4};
    preset.base.superframes = 30;
    ExperimentResult res = run_experiment(preset, {1, 2});
    CHECK(res.bounds_ok);
    CHECK(res.bound_violations.empty());
    // one DAIL and one SMS row per sweep point
    REQUIRE(res.rows.size() == 4);
    CHECK(res.rows[0].scheme == "DAIL");
    CHECK(res.rows[1].scheme == "SMS");
    CHECK(res.rows[0].value == 2);
    CHECK(res.rows[2].value == 4);
    for (const SummaryRow& r : res.rows) {
        CHECK(r.mcp >= 0.0);
        CHECK(r.mcp <= 1.0);
        CHECK(r.pc >= 0.0);
        CHECK(r.ci95 >= 0.0);
    }
}

TEST_CASE("summary csv is deterministic") {
    ExperimentPreset preset = make_preset("exp2");
    preset.sweep_values = {10, 12};
    preset.base.superframes = 20;
    preset.base.n_wbans = 4;
    ExperimentResult a = run_experiment(preset, {3, 4});
    ExperimentResult b = run_experiment(preset, {3, 4});
    std::ostringstream ca, cb;
    write_summary_csv(ca, a);
    write_summary_csv(cb, b);
    CHECK(ca.str() == cb.str());
    std::istringstream in(ca.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "scheme,sweep_var,value,mcp,pc,ci95");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("deliberately contradictory report trips the bound check") {
    sim::NetworkConfig cfg = make_preset("exp1").base;
    cfg.n_wbans = 2;
    cfg.superframes = 3;
    cfg.seed = 9;
    sim::Network net = sim::build_network(cfg);
    sim::Schedule sched =
        sim::assign_dail_schedules(net, dail::generate_mols(17), cfg);
    sim::CollisionReport rep = sim::run(net, sched, cfg);
    CHECK(check_collision_bounds(net, sched, rep).empty());
    // forge more pairwise events than the pattern structure permits
    rep.per_sensor_pair_events[1][0] = net.n_sensors() * 20;
    CHECK_FALSE(check_collision_bounds(net, sched, rep).empty());
}
