#include "afmtj/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "afmtj/io_util.hpp"
#include "afmtj/simplex.hpp"
#include "nlohmann/json.hpp"

namespace afmtj {

void SweepConfig::validate() const {
    if (voltages.empty()) throw ValidationError("SweepConfig.voltages must be non-empty");
    for (std::size_t i = 1; i < voltages.size(); ++i)
        if (!(voltages[i] > voltages[i - 1]))
            throw ValidationError("SweepConfig.voltages must be strictly increasing");
    if (devices.empty()) throw ValidationError("SweepConfig.devices must be non-empty");
    for (const auto& d : devices) d.params.validate();
    criterion.validate();
    if (jobs < 1) throw ValidationError("SweepConfig.jobs must be >= 1");
}

SweepTable voltage_sweep(const SweepConfig& cfg) {
    cfg.validate();

    struct Point {
        std::size_t device_idx;
        double voltage;
    };
    std::vector<Point> points;
    for (std::size_t d = 0; d < cfg.devices.size(); ++d)
        for (double v : cfg.voltages) points.push_back({d, v});

    std::vector<SweepRow> rows(points.size());
    auto run_point = [&](std::size_t k) {
        const Point& p = points[k];
        const SweepDevice& dev = cfg.devices[p.device_idx];
        SweepRow row;
        row.device = dev.label.empty() ? to_string(dev.params.kind) : dev.label;
        row.voltage = p.voltage;
        try {
            PulseSpec pulse = cfg.pulse;
            pulse.amplitude = p.voltage;
            SolverOptions opts = cfg.solver;
            if (opts.t_end <= 0.0) opts.t_end = pulse.width;
            TransientResult tr =
                run_write(dev.params, pulse, opts, cfg.criterion, dev.stt_scale);
            row.switched = tr.switched;
            if (tr.latency) row.latency_ps = *tr.latency / units::ps;
            if (tr.energy) row.energy_fJ = *tr.energy / units::fJ;
        } catch (const std::exception&) {
            row.switched = false;  // recorded as unswitched, sweep continues
        }
        rows[k] = row;
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (std::size_t k = 0; k < points.size(); ++k) run_point(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < points.size();
                     k = next.fetch_add(1))
                    run_point(k);
            });
        for (auto& t : workers) t.join();
    }

    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.device != b.device) return a.device < b.device;
        return a.voltage < b.voltage;
    });
    return SweepTable{std::move(rows)};
}

std::optional<SweepRow> SweepTable::find(const std::string& device, double voltage) const {
    for (const auto& r : rows)
        if (r.device == device && std::abs(r.voltage - voltage) < 1e-9) return r;
    return std::nullopt;
}

void CalibrationProblem::validate() const {
    if (targets.size() < free_params.size())
        throw ValidationError("CalibrationProblem needs at least as many targets as free params");
    for (const auto& p : free_params)
        if (p != "omega_E" && p != "Hk" && p != "r_p" && p != "eta")
            throw ValidationError("unknown calibration free parameter: " + p);
    for (const auto& t : targets)
        if (!(t.value > 0.0)) throw ValidationError("calibration targets must be positive");
}

namespace {

struct ParamVector {
    DeviceParams params;
    double stt_scale;
};

ParamVector apply_params(const CalibrationProblem& prob, const DeviceParams& base,
                         double base_scale, const std::vector<double>& log_x) {
    ParamVector pv{base, base_scale};
    for (std::size_t i = 0; i < prob.free_params.size(); ++i) {
        const double v = std::exp(log_x[i]);
        const std::string& name = prob.free_params[i];
        if (name == "omega_E")
            pv.params.exchange.omega_E = v;
        else if (name == "Hk")
            pv.params.material.Hk = v;
        else if (name == "r_p")
            pv.params.resistance.r_p = v;
        else if (name == "eta")
            pv.stt_scale = v;
    }
    return pv;
}

std::vector<double> simulate_targets(const CalibrationProblem& prob, const ParamVector& pv) {
    // One transient per distinct voltage, shared by latency and energy targets.
    std::map<double, TransientResult> cache;
    std::vector<double> sims;
    sims.reserve(prob.targets.size());
    for (const auto& tgt : prob.targets) {
        auto it = cache.find(tgt.voltage);
        if (it == cache.end()) {
            PulseSpec pulse = prob.pulse;
            pulse.amplitude = tgt.voltage;
            SolverOptions opts = prob.solver;
            if (opts.t_end <= 0.0) opts.t_end = pulse.width;
            it = cache.emplace(tgt.voltage, run_write(pv.params, pulse, opts, prob.criterion,
                                                      pv.stt_scale))
                     .first;
        }
        const TransientResult& tr = it->second;
        if (tgt.observable == Observable::Latency)
            sims.push_back(tr.latency.value_or(std::nan("")));
        else
            sims.push_back(tr.energy.value_or(std::nan("")));
    }
    return sims;
}

}  // namespace

CalibrationResult calibrate(const CalibrationProblem& problem, const DeviceParams& base,
                            double base_stt_scale) {
    problem.validate();
    base.validate();

    std::vector<double> x0;
    for (const auto& name : problem.free_params) {
        double v = 0.0;
        if (name == "omega_E") v = base.exchange.omega_E;
        else if (name == "Hk") v = base.material.Hk;
        else if (name == "r_p") v = base.resistance.r_p;
        else v = base_stt_scale;
        if (!(v > 0.0))
            throw ValidationError("calibration free parameter '" + name +
                                  "' needs a positive starting value");
        x0.push_back(std::log(v));
    }

    auto objective = [&](const std::vector<double>& log_x) -> double {
        try {
            const ParamVector pv = apply_params(problem, base, base_stt_scale, log_x);
            pv.params.validate();
            const std::vector<double> sims = simulate_targets(problem, pv);
            double obj = 0.0;
            for (std::size_t i = 0; i < sims.size(); ++i) {
                if (!std::isfinite(sims[i])) return 1e6;  // unswitched target point
                const double r = (sims[i] - problem.targets[i].value) / problem.targets[i].value;
                obj += problem.targets[i].weight * r * r;
            }
            return obj;
        } catch (const std::exception&) {
            return 1e6;
        }
    };

    SimplexOptions sopts;
    sopts.max_evals = problem.max_evals;
    sopts.f_tol = problem.tolerance;
    sopts.init_step = 0.05;  // parameters move in log space
    const SimplexResult sres = nelder_mead(objective, x0, sopts);

    CalibrationResult out;
    const ParamVector pv = apply_params(problem, base, base_stt_scale, sres.x);
    out.params = pv.params;
    out.stt_scale = pv.stt_scale;
    for (std::size_t i = 0; i < problem.free_params.size(); ++i)
        out.fitted[problem.free_params[i]] = std::exp(sres.x[i]);
    const std::vector<double> sims = simulate_targets(problem, pv);
    for (std::size_t i = 0; i < sims.size(); ++i)
        out.residuals.push_back((sims[i] - problem.targets[i].value) / problem.targets[i].value);
    out.objective = sres.fx;
    out.converged = sres.converged;
    out.evals = sres.evals;
    return out;
}

namespace {

std::string row_to_csv(const SweepRow& r) {
    std::ostringstream os;
    os << r.device << ',' << format_double(r.voltage) << ',';
    if (r.latency_ps) os << format_double(*r.latency_ps);
    os << ',';
    if (r.energy_fJ) os << format_double(*r.energy_fJ);
    os << ',' << (r.switched ? "true" : "false");
    return os.str();
}

}  // namespace

void emit_results_csv(const SweepTable& table, const std::string& path) {
    std::ostringstream os;
    os << "device,voltage_V,latency_ps,energy_fJ,switched\n";
    for (const auto& r : table.rows) os << row_to_csv(r) << '\n';
    atomic_write_file(path, os.str());
}

void emit_results_json(const SweepTable& table, const std::string& path) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json row;
        row["device"] = r.device;
        row["voltage_V"] = r.voltage;
        if (r.latency_ps)
            row["latency_ps"] = *r.latency_ps;
        else
            row["latency_ps"] = nullptr;
        if (r.energy_fJ)
            row["energy_fJ"] = *r.energy_fJ;
        else
            row["energy_fJ"] = nullptr;
        row["switched"] = r.switched;
        rows.push_back(row);
    }
    atomic_write_file(path, rows.dump(2) + "\n");
}

SweepTable read_results_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "device,voltage_V,latency_ps,energy_fJ,switched")
        throw IoError("unexpected sweep CSV header in " + path);
    SweepTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        SweepRow r;
        std::getline(ls, r.device, ',');
        std::getline(ls, field, ',');
        r.voltage = std::stod(field);
        std::getline(ls, field, ',');
        if (!field.empty()) r.latency_ps = std::stod(field);
        std::getline(ls, field, ',');
        if (!field.empty()) r.energy_fJ = std::stod(field);
        std::getline(ls, field, ',');
        r.switched = (field == "true");
        table.rows.push_back(r);
    }
    return table;
}

}  // namespace afmtj
