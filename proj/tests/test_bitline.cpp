#include <cmath>

#include "afmtj/bitline.hpp"
#include "doctest.h"

using namespace afmtj;

TEST_CASE("bitline conductance: parallel summation") {
    ResistanceModel rm;  // r_p = 2900, tmr = 0.8
    const double gp = 1.0 / 2900.0;
    const double gap = 1.0 / 5220.0;
    CHECK(bitline_conductance({{1}}, rm) == doctest::Approx(gp));
    CHECK(bitline_conductance({{0}}, rm) == doctest::Approx(gap));
    CHECK(bitline_conductance({{1}, {0}}, rm) == doctest::Approx(gp + gap));
    CHECK(bitline_conductance({{1}, {1}, {0}}, rm) == doctest::Approx(2.0 * gp + gap));
    CHECK_THROWS_AS(bitline_conductance({}, rm), ValidationError);
    CHECK_THROWS_AS(bitline_conductance({{2}}, rm), ValidationError);
}

TEST_CASE("auto references sit at the level midpoints") {
    ResistanceModel rm;  // r_p = 2900, tmr = 0.8
    const SenseConfig cfg = auto_references(rm);
    // Hand-computed: gp = 344.83 uS, gap = 191.57 uS ->
    // G(0,0) = 383.14, G(0,1) = 536.40, G(1,1) = 689.66 uS.
    CHECK(cfg.ref_xor_lo == doctest::Approx(459.77e-6).epsilon(1e-4));
    CHECK(cfg.ref_and == doctest::Approx(613.03e-6).epsilon(1e-4));
    CHECK(cfg.ref_xor_hi == doctest::Approx(cfg.ref_and));
    CHECK_NOTHROW(cfg.validate(rm));
}

TEST_CASE("two-cell logic truth tables across the TMR range") {
    for (double tmr : {0.3, 0.5, 0.8, 1.5, 3.0, 5.0}) {
        CAPTURE(tmr);
        ResistanceModel rm;
        rm.tmr = tmr;
        const SenseConfig cfg = auto_references(rm);
        for (int a = 0; a <= 1; ++a) {
            for (int b = 0; b <= 1; ++b) {
                CHECK(execute_logic(LogicOp::And, a, b, rm, cfg) == (a & b));
                CHECK(execute_logic(LogicOp::Nand, a, b, rm, cfg) == 1 - (a & b));
                CHECK(execute_logic(LogicOp::Xor, a, b, rm, cfg) == (a ^ b));
            }
        }
    }
}

TEST_CASE("sense margins are symmetric and positive at the midpoint references") {
    ResistanceModel rm;
    const SenseConfig cfg = auto_references(rm);
    const double g00 = bitline_conductance({{0}, {0}}, rm);
    const double g01 = bitline_conductance({{0}, {1}}, rm);
    const double g11 = bitline_conductance({{1}, {1}}, rm);

    CHECK(sense_margin(g01, cfg, LogicOp::And) > 0.0);
    CHECK(sense_margin(g11, cfg, LogicOp::And) ==
          doctest::Approx(sense_margin(g01, cfg, LogicOp::And)));
    CHECK(sense_margin(g00, cfg, LogicOp::Xor) ==
          doctest::Approx(sense_margin(g01, cfg, LogicOp::Xor)));
    // Larger TMR widens every margin.
    ResistanceModel rm_hi;
    rm_hi.tmr = 2.0;
    const SenseConfig cfg_hi = auto_references(rm_hi);
    CHECK(sense_margin(bitline_conductance({{0}, {1}}, rm_hi), cfg_hi, LogicOp::And) >
          sense_margin(g01, cfg, LogicOp::And));
}

TEST_CASE("degenerate TMR is rejected: levels collapse below the margin floor") {
    ResistanceModel rm;
    rm.tmr = 0.02;  // levels nearly coincide
    CHECK_THROWS_AS(auto_references(rm), ValidationError);
    rm.tmr = 0.0;
    CHECK_THROWS_AS(auto_references(rm), ValidationError);
}

TEST_CASE("sense config validation rejects misplaced references") {
    ResistanceModel rm;
    SenseConfig cfg = auto_references(rm);
    SenseConfig bad = cfg;
    bad.ref_and = cfg.ref_xor_lo;  // below G(0,1)
    CHECK_THROWS_AS(bad.validate(rm), ValidationError);
    bad = cfg;
    bad.ref_xor_lo = bad.ref_xor_hi;  // window collapsed
    CHECK_THROWS_AS(bad.validate(rm), ValidationError);
    bad = cfg;
    bad.v_read = 0.0;
    CHECK_THROWS_AS(bad.validate(rm), ValidationError);
}

TEST_CASE("logic op parsing") {
    CHECK(logic_op_from_string("and") == LogicOp::And);
    CHECK(logic_op_from_string("nand") == LogicOp::Nand);
    CHECK(logic_op_from_string("xor") == LogicOp::Xor);
    CHECK_THROWS_AS(logic_op_from_string("nor"), ValidationError);
}
