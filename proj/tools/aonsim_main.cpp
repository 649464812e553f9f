#include "aonsim/errors.hpp"
#include "aonsim/report.hpp"
#include "aonsim/runner.hpp"
#include "aonsim/sweep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

namespace {

using namespace aonsim;

std::vector<std::uint64_t> seed_list(std::uint64_t first, std::uint32_t count) {
    std::vector<std::uint64_t> seeds(count);
    std::iota(seeds.begin(), seeds.end(), first);
    return seeds;
}

void print_run_summary(const Metrics& m) {
    std::cout << "requests: " << m.injected_requests << " injected, " << m.completed_requests << " completed, "
              << m.discarded_requests << " discarded\n"
              << "flits:    " << m.injected_flits << " injected, " << m.delivered_flits << " delivered, "
              << m.discarded_flits << " discarded, " << m.dropped_flits << " undeliverable\n"
              << "makespan: " << m.makespan_us() << " us, conversions: " << m.oe_conversions
              << ", mean channel utilization: " << m.mean_wavelength_utilization << '\n';
    if (m.peak_control_channels > m.initial_control_channels)
        std::cout << "control channels: started " << m.initial_control_channels << ", peaked "
                  << m.peak_control_channels << ", ended " << m.final_control_channels << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for a connection-oriented all-optical network protocol with "
                 "control-channel signalling, plus its electronic reference model"};

    std::string topology = "single-switch";
    std::uint32_t wavelengths = 4, control = 1, parallelism = 1;
    std::string mode_name = "proposed-connection";
    std::uint32_t requests = 100, flits = 100;
    std::uint64_t seed = 1;
    std::uint32_t seeds = 1;
    double prop_us = 1.0, proc_us = 2.0, flit_cycle_us = 1.0;
    bool dynamic_control = false;
    bool sweep = false;
    std::string csv_path;

    app.add_option("--topology", topology, "Builtin topology (single-switch, ring5) or JSON file path");
    app.add_option("--wavelengths", wavelengths, "Wavelength channels per directed link");
    app.add_option("--control", control, "Channels used for control signalling");
    app.add_option("--parallelism", parallelism, "Concurrent flit lanes per source");
    app.add_option("--mode", mode_name, "proposed-connection, proposed-datagram, or baseline");
    app.add_option("--requests", requests, "Requests to inject");
    app.add_option("--flits", flits, "Flits per request");
    app.add_option("--seed", seed, "Base random seed");
    app.add_option("--seeds", seeds, "Number of consecutive seeds to run")->check(CLI::PositiveNumber);
    app.add_option("--prop-delay-us", prop_us, "Per-hop propagation delay");
    app.add_option("--proc-time-us", proc_us, "Per-packet switch processing time");
    app.add_option("--flit-cycle-us", flit_cycle_us, "Serialization time of one flit");
    app.add_flag("--dynamic-control", dynamic_control, "Let links grow and shrink their control channel set");
    app.add_option("--csv", csv_path, "Also write results to this CSV file");
    app.add_flag("--paper-sweep", sweep,
                 "Run the full comparison grid: (W,control) in {(4,1),(16,4),(64,16)}, "
                 "parallelism in {1,4,8,16}, proposed vs baseline");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        cfg.topology = topology;
        cfg.mode = parse_mode(mode_name);
        cfg.protocol.wavelengths = wavelengths;
        cfg.protocol.control_channels = control;
        cfg.protocol.parallelism = parallelism;
        cfg.protocol.dynamic_control = dynamic_control;
        cfg.timing.propagation_delay_us = prop_us;
        cfg.timing.switch_processing_us = proc_us;
        cfg.timing.flit_cycle_us = flit_cycle_us;
        cfg.workload.request_count = requests;
        cfg.workload.flits_per_request = flits;
        cfg.workload.arrival = ArrivalPattern::AllAtZero;
        cfg.workload.pairs =
            topology == "single-switch" ? PairPattern::SingleSwitchPair : PairPattern::UniformRandom;

        std::vector<RunRecord> records;
        if (sweep) {
            records = run_cells_parallel(cfg, comparison_sweep_cells(), seed_list(seed, seeds));
        } else {
            validate(cfg);
            const NetworkGraph g = load_graph(cfg.topology);
            for (auto s : seed_list(seed, seeds)) {
                const Metrics m = run_once(g, cfg, s);
                records.push_back(record_of(cfg, m));
                if (seeds == 1)
                    print_run_summary(m);
            }
        }
        std::cout << comparison_tables(records);
        if (!csv_path.empty()) {
            write_csv_file(csv_path, records);
            std::cout << "wrote " << records.size() << " rows to " << csv_path << '\n';
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 2;
    }
}
