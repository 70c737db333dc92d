#pragma once

#include <string>
#include <vector>

#include "afmtj/params.hpp"

namespace afmtj {

// bit = 1 <=> parallel (low resistance r_p); bit = 0 <=> antiparallel (r_ap).
struct CellState {
    int bit = 0;
};

struct SenseConfig {
    double v_read = 0.1;      // [V]
    double t_sense = 200e-12; // behavioral sense latency [s]
    double ref_and = 0.0;     // single reference conductance [S]
    double ref_xor_lo = 0.0;  // window references [S]
    double ref_xor_hi = 0.0;
    double margin_floor = 0.01;  // min relative separation between levels

    void validate(const ResistanceModel& rm) const;
};

enum class LogicOp { And, Nand, Xor };

LogicOp logic_op_from_string(const std::string& s);

// G = sum 1/r_i over the activated cells (parallel conductance summation).
double bitline_conductance(const std::vector<CellState>& cells, const ResistanceModel& rm);

// Exact two-row conductance levels G(0,0) < G(0,1) < G(1,1); references sit at
// the midpoints between adjacent levels.
SenseConfig auto_references(const ResistanceModel& rm, double v_read = 0.1,
                            double t_sense = 200e-12);

int sense(double g_total, const SenseConfig& cfg, LogicOp mode);

// Distance from g_total to the nearest reference of the given mode [S].
double sense_margin(double g_total, const SenseConfig& cfg, LogicOp mode);

int execute_logic(LogicOp op, int bit_a, int bit_b, const ResistanceModel& rm,
                  const SenseConfig& cfg);

}  // namespace afmtj
