#include "afmtj/bitline.hpp"

#include <algorithm>
#include <cmath>

namespace afmtj {

namespace {

// Two-row conductance levels for the reference derivation.
struct Levels {
    double g00, g01, g11;
};

Levels two_row_levels(const ResistanceModel& rm) {
    const double gp = 1.0 / rm.r_p;
    const double gap = 1.0 / rm.r_ap();
    return {2.0 * gap, gp + gap, 2.0 * gp};
}

}  // namespace

LogicOp logic_op_from_string(const std::string& s) {
    if (s == "and") return LogicOp::And;
    if (s == "nand") return LogicOp::Nand;
    if (s == "xor") return LogicOp::Xor;
    throw ValidationError("unknown logic op: " + s);
}

void SenseConfig::validate(const ResistanceModel& rm) const {
    rm.validate();
    if (!(v_read > 0.0)) throw ValidationError("SenseConfig.v_read must be > 0");
    if (!(t_sense > 0.0)) throw ValidationError("SenseConfig.t_sense must be > 0");
    if (!(ref_and > 0.0 && ref_xor_lo > 0.0 && ref_xor_hi > 0.0))
        throw ValidationError("SenseConfig references must be > 0");
    if (!(ref_xor_lo < ref_xor_hi))
        throw ValidationError("SenseConfig requires ref_xor_lo < ref_xor_hi");

    const Levels lv = two_row_levels(rm);
    const double floor = margin_floor * lv.g11;
    if (lv.g01 - lv.g00 < 2.0 * floor || lv.g11 - lv.g01 < 2.0 * floor)
        throw ValidationError(
            "sense margins below floor: TMR too small to separate conductance levels");
    if (!(ref_and > lv.g01 + floor && ref_and < lv.g11 - floor))
        throw ValidationError("ref_and must lie strictly between G(1,0) and G(1,1) with margin");
    if (!(ref_xor_lo > lv.g00 + floor && ref_xor_lo < lv.g01 - floor))
        throw ValidationError("ref_xor_lo must lie strictly between G(0,0) and G(0,1) with margin");
    if (std::abs(ref_xor_hi - ref_and) > 0.5 * (lv.g11 - lv.g01))
        throw ValidationError("ref_xor_hi must separate G(0,1) from G(1,1)");
}

double bitline_conductance(const std::vector<CellState>& cells, const ResistanceModel& rm) {
    if (cells.empty()) throw ValidationError("bitline_conductance: empty activation");
    const double gp = 1.0 / rm.r_p;
    const double gap = 1.0 / rm.r_ap();
    double g = 0.0;
    for (const auto& c : cells) {
        if (c.bit != 0 && c.bit != 1)
            throw ValidationError("CellState.bit must be 0 or 1");
        g += c.bit ? gp : gap;
    }
    return g;
}

SenseConfig auto_references(const ResistanceModel& rm, double v_read, double t_sense) {
    const Levels lv = two_row_levels(rm);
    SenseConfig cfg;
    cfg.v_read = v_read;
    cfg.t_sense = t_sense;
    cfg.ref_xor_lo = 0.5 * (lv.g00 + lv.g01);
    cfg.ref_and = 0.5 * (lv.g01 + lv.g11);
    cfg.ref_xor_hi = cfg.ref_and;
    cfg.validate(rm);
    return cfg;
}

int sense(double g_total, const SenseConfig& cfg, LogicOp mode) {
    switch (mode) {
        case LogicOp::And:
            return g_total > cfg.ref_and ? 1 : 0;
        case LogicOp::Nand:
            return g_total > cfg.ref_and ? 0 : 1;
        case LogicOp::Xor:
            return (g_total > cfg.ref_xor_lo && g_total < cfg.ref_xor_hi) ? 1 : 0;
    }
    throw ValidationError("sense: invalid mode");
}

double sense_margin(double g_total, const SenseConfig& cfg, LogicOp mode) {
    if (mode == LogicOp::Xor)
        return std::min(std::abs(g_total - cfg.ref_xor_lo), std::abs(g_total - cfg.ref_xor_hi));
    return std::abs(g_total - cfg.ref_and);
}

int execute_logic(LogicOp op, int bit_a, int bit_b, const ResistanceModel& rm,
                  const SenseConfig& cfg) {
    cfg.validate(rm);
    const double g = bitline_conductance({CellState{bit_a}, CellState{bit_b}}, rm);
    return sense(g, cfg, op);
}

}  // namespace afmtj
