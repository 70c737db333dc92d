#pragma once

#include <map>
#include <string>
#include <vector>

#include "afmtj/params.hpp"

namespace afmtj {

struct DeviceCard {
    std::string label;       // AFMTJ | MTJ
    double t_write = 0.0;    // [s] at the nominal voltage
    double e_write = 0.0;    // [J]
    double t_sense = 0.0;    // [s] per activation
    double e_sense = 0.0;    // [J] per activated column
    double v_nom = 1.0;      // [V]

    void validate() const {
        if (!(t_write > 0.0 && e_write > 0.0 && t_sense > 0.0 && e_sense > 0.0))
            throw ValidationError("DeviceCard figures must all be positive");
        if (label != "AFMTJ" && label != "MTJ")
            throw ValidationError("DeviceCard.label must be AFMTJ or MTJ");
    }
};

struct HierarchyLevel {
    std::string name;
    double capacity_bytes = 0.0;
    double parallel_width = 1.0;  // columns computable per bulk op
};

struct HierarchyConfig {
    std::vector<HierarchyLevel> levels;
    double controller_time = 0.0;    // per bulk op [s]
    double controller_energy = 0.0;  // per bulk op [J]

    const HierarchyLevel& level(const std::string& name) const;

    void validate() const {
        if (levels.empty()) throw ValidationError("HierarchyConfig needs at least one level");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (!(levels[i].parallel_width >= 1.0))
                throw ValidationError("HierarchyLevel.parallel_width must be >= 1");
            if (!(levels[i].capacity_bytes > 0.0))
                throw ValidationError("HierarchyLevel.capacity_bytes must be > 0");
            if (i > 0 && !(levels[i].capacity_bytes > levels[i - 1].capacity_bytes))
                throw ValidationError("HierarchyConfig capacities must increase across levels");
        }
        if (controller_time < 0.0 || controller_energy < 0.0)
            throw ValidationError("controller overheads must be >= 0");
    }
};

struct CpuBaseline {
    double f_cpu = 2e9;     // [Hz]
    double avg_power = 5.0; // [W]

    void validate() const {
        if (!(f_cpu > 0.0 && avg_power > 0.0))
            throw ValidationError("CpuBaseline fields must be positive");
    }
};

struct BulkOps {
    double xor_ops = 0.0;
    double nand_ops = 0.0;
    double write_ops = 0.0;
    double read_ops = 0.0;
};

struct WorkloadProfile {
    std::string name;
    double cpu_cycles = 0.0;
    double cpu_energy = 0.0;  // [J]; 0 means derive from avg_power
    BulkOps bulk_ops;
    double bits_per_op = 0.0;
    double residual_cpu_cycles = 0.0;  // non-offloadable fraction
    std::string level = "L1";

    void validate() const {
        if (cpu_cycles < 0.0 || residual_cpu_cycles < 0.0 || bits_per_op < 0.0 ||
            cpu_energy < 0.0 || bulk_ops.xor_ops < 0.0 || bulk_ops.nand_ops < 0.0 ||
            bulk_ops.write_ops < 0.0 || bulk_ops.read_ops < 0.0)
            throw ValidationError("WorkloadProfile counts must be >= 0");
        if (residual_cpu_cycles > cpu_cycles)
            throw ValidationError("WorkloadProfile.residual_cpu_cycles exceeds cpu_cycles");
    }
};

struct CostPair {
    double time = 0.0;    // [s]
    double energy = 0.0;  // [J]
};

CostPair estimate_cpu(const WorkloadProfile& profile, const CpuBaseline& base);
CostPair estimate_imc(const WorkloadProfile& profile, const DeviceCard& card,
                      const HierarchyConfig& hier, const CpuBaseline& base);

struct EvalRow {
    std::string workload;
    std::string device;
    double t_cpu = 0.0, e_cpu = 0.0;
    double t_imc = 0.0, e_imc = 0.0;
    double speedup = 0.0;
    double energy_savings = 0.0;
};

struct EvalReport {
    std::vector<EvalRow> rows;  // per workload and device, then an "average" row per device

    const EvalRow& find(const std::string& workload, const std::string& device) const;
};

EvalReport speedup_report(const std::vector<WorkloadProfile>& profiles,
                          const std::vector<DeviceCard>& cards, const HierarchyConfig& hier,
                          const CpuBaseline& base);

void emit_report_csv(const EvalReport& report, const std::string& path);
void emit_report_json(const EvalReport& report, const std::string& path);
EvalReport read_report_csv(const std::string& path);

}  // namespace afmtj
