#include "dpa/report.hpp"

#include <cmath>

namespace dpa {

using nlohmann::json;

json to_json(const ModelParams& p) {
    return json{{"alpha_mag", p.alpha_mag}, {"alpha_phase", p.alpha_phase}, {"squeeze_mag", p.squeeze_mag},
                {"squeeze_phase", p.squeeze_phase}, {"nbar", p.nbar},       {"prep_time", p.prep_time}};
}

json critical_record(double nbar, double r, const CriticalPointResult& res) {
    json j{{"nbar", nbar},
           {"r", r},
           {"alpha_c", res.alpha_c},
           {"tangency_u", nullptr},
           {"mechanism", to_string(res.mechanism)},
           {"min_q", res.min_q},
           {"zeros", json::array()}};
    if (res.tangency_u) {
        j["tangency_u"] = *res.tangency_u;
        j["zeros"].push_back(*res.tangency_u);
    } else {
        j["zeros"].push_back(0.0);
    }
    return j;
}

json classification_record(double nbar, double r, double alpha_mag, const Classification& cls) {
    return json{{"nbar", nbar},
                {"r", r},
                {"alpha", alpha_mag},
                {"kind", to_string(cls.kind)},
                {"q0", cls.q_at_zero},
                {"zeros", cls.zeros}};
}

json verification_json(const VerificationReport& report) {
    json out = json::array();
    for (const auto& r : report.records) {
        json j{{"quantity", r.quantity},
               {"params", to_json(r.params)},
               {"u", r.u},
               {"lambda", nullptr},
               {"closed_form", r.closed_form},
               {"oracle", r.oracle},
               {"rel_err", std::isfinite(r.rel_err) ? json(r.rel_err) : json(nullptr)},
               {"N_used", r.n_used},
               {"pass", r.pass}};
        if (r.lambda) j["lambda"] = *r.lambda;
        if (!r.note.empty()) j["note"] = r.note;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace dpa
