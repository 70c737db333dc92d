#include "afmtj/imc.hpp"

#include <algorithm>
#include <sstream>

#include "afmtj/io_util.hpp"
#include "nlohmann/json.hpp"

namespace afmtj {

const HierarchyLevel& HierarchyConfig::level(const std::string& name) const {
    for (const auto& l : levels)
        if (l.name == name) return l;
    throw ValidationError("workload mapped to unknown hierarchy level: " + name);
}

CostPair estimate_cpu(const WorkloadProfile& profile, const CpuBaseline& base) {
    profile.validate();
    base.validate();
    CostPair c;
    c.time = profile.cpu_cycles / base.f_cpu;
    c.energy = profile.cpu_energy > 0.0 ? profile.cpu_energy : base.avg_power * c.time;
    return c;
}

CostPair estimate_imc(const WorkloadProfile& profile, const DeviceCard& card,
                      const HierarchyConfig& hier, const CpuBaseline& base) {
    profile.validate();
    card.validate();
    hier.validate();
    base.validate();

    const HierarchyLevel& lvl = hier.level(profile.level);
    const CostPair cpu = estimate_cpu(profile, base);
    const double residual_frac =
        profile.cpu_cycles > 0.0 ? profile.residual_cpu_cycles / profile.cpu_cycles : 0.0;

    // Write-phase counts: xor/nand/write carry one result write-back, reads none.
    const double write_phase_ops =
        profile.bulk_ops.xor_ops + profile.bulk_ops.nand_ops + profile.bulk_ops.write_ops;
    const double total_ops = write_phase_ops + profile.bulk_ops.read_ops;

    CostPair imc;
    const double t_write_phase = write_phase_ops * (card.t_sense + card.t_write);
    const double t_read_phase = profile.bulk_ops.read_ops * card.t_sense;
    imc.time = (t_write_phase + t_read_phase + total_ops * hier.controller_time) /
                   lvl.parallel_width +
               profile.residual_cpu_cycles / base.f_cpu;

    imc.energy = profile.bits_per_op *
                     (write_phase_ops * (card.e_write + card.e_sense) +
                      profile.bulk_ops.read_ops * card.e_sense) +
                 total_ops * hier.controller_energy + residual_frac * cpu.energy;
    return imc;
}

const EvalRow& EvalReport::find(const std::string& workload, const std::string& device) const {
    for (const auto& r : rows)
        if (r.workload == workload && r.device == device) return r;
    throw ValidationError("report row not found: " + workload + "/" + device);
}

EvalReport speedup_report(const std::vector<WorkloadProfile>& profiles,
                          const std::vector<DeviceCard>& cards, const HierarchyConfig& hier,
                          const CpuBaseline& base) {
    EvalReport report;
    for (const auto& card : cards) {
        double sum_speedup = 0.0, sum_savings = 0.0;
        for (const auto& p : profiles) {
            const CostPair cpu = estimate_cpu(p, base);
            const CostPair imc = estimate_imc(p, card, hier, base);
            EvalRow row;
            row.workload = p.name;
            row.device = card.label;
            row.t_cpu = cpu.time;
            row.e_cpu = cpu.energy;
            row.t_imc = imc.time;
            row.e_imc = imc.energy;
            row.speedup = cpu.time / imc.time;
            row.energy_savings = cpu.energy / imc.energy;
            sum_speedup += row.speedup;
            sum_savings += row.energy_savings;
            report.rows.push_back(row);
        }
        EvalRow avg;
        avg.workload = "average";
        avg.device = card.label;
        avg.speedup = sum_speedup / double(profiles.size());
        avg.energy_savings = sum_savings / double(profiles.size());
        report.rows.push_back(avg);
    }
    return report;
}

void emit_report_csv(const EvalReport& report, const std::string& path) {
    std::ostringstream os;
    os << "workload,device,t_cpu_s,e_cpu_J,t_imc_s,e_imc_J,speedup,energy_savings\n";
    for (const auto& r : report.rows) {
        os << r.workload << ',' << r.device << ',' << format_double(r.t_cpu) << ','
           << format_double(r.e_cpu) << ',' << format_double(r.t_imc) << ','
           << format_double(r.e_imc) << ',' << format_double(r.speedup) << ','
           << format_double(r.energy_savings) << '\n';
    }
    atomic_write_file(path, os.str());
}

void emit_report_json(const EvalReport& report, const std::string& path) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["workload"] = r.workload;
        row["device"] = r.device;
        row["t_cpu_s"] = r.t_cpu;
        row["e_cpu_J"] = r.e_cpu;
        row["t_imc_s"] = r.t_imc;
        row["e_imc_J"] = r.e_imc;
        row["speedup"] = r.speedup;
        row["energy_savings"] = r.energy_savings;
        rows.push_back(row);
    }
    atomic_write_file(path, rows.dump(2) + "\n");
}

EvalReport read_report_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        line != "workload,device,t_cpu_s,e_cpu_J,t_imc_s,e_imc_J,speedup,energy_savings")
        throw IoError("unexpected report CSV header in " + path);
    EvalReport report;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        EvalRow r;
        std::string field;
        std::getline(ls, r.workload, ',');
        std::getline(ls, r.device, ',');
        std::getline(ls, field, ',');
        r.t_cpu = std::stod(field);
        std::getline(ls, field, ',');
        r.e_cpu = std::stod(field);
        std::getline(ls, field, ',');
        r.t_imc = std::stod(field);
        std::getline(ls, field, ',');
        r.e_imc = std::stod(field);
        std::getline(ls, field, ',');
        r.speedup = std::stod(field);
        std::getline(ls, field, ',');
        r.energy_savings = std::stod(field);
        report.rows.push_back(r);
    }
    return report;
}

}  // namespace afmtj
