#pragma once

#include <json.hpp>

#include "expdio/congruence.hpp"
#include "expdio/equation.hpp"
#include "expdio/lemma_verify.hpp"

namespace expdio {

using Json = nlohmann::json;

// Big integers render as JSON numbers while they fit an unsigned long and
// as decimal strings beyond that (order-record cofactors, gap witnesses).
inline Json int_json(const Int& v) {
    if (v >= 0 && v.fits_ulong_p()) return Json(v.get_ui());
    if (v < 0 && v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline Json solution_set_json(const SolutionSet& ss) {
    Json j;
    j["a"] = int_json(ss.triple.a());
    j["b"] = int_json(ss.triple.b());
    j["c"] = int_json(ss.triple.c());
    j["cap"] = ss.cap;
    j["complete"] = ss.complete;
    j["n"] = ss.solutions.size();
    Json sols = Json::array();
    for (const auto& s : ss.solutions) sols.push_back({s.x, s.y, s.z});
    j["solutions"] = std::move(sols);
    return j;
}

inline Json gap_witness_json(const GapWitness& w) {
    Json j;
    j["kind"] = w.kind == GapWitness::Kind::sum ? "sum" : "diff";
    j["t"] = int_json(w.t);
    j["u_power"] = int_json(w.u_power);
    j["v_power"] = int_json(w.v_power);
    return j;
}

inline Json check_report_json(const CheckReport& rep) {
    Json j;
    j["check"] = rep.check;
    j["applicable"] = rep.applicable;
    j["swapped"] = rep.swapped;
    Json pre = Json::array();
    for (const auto& p : rep.preconditions) pre.push_back({{"name", p.name}, {"holds", p.holds}});
    j["preconditions"] = std::move(pre);
    Json con = Json::array();
    for (const auto& c : rep.conclusions)
        con.push_back({{"name", c.name}, {"holds", c.holds}, {"asserted", c.asserted}});
    j["conclusions"] = std::move(con);
    if (rep.witness) j["witness"] = gap_witness_json(*rep.witness);
    return j;
}

}  // namespace expdio
