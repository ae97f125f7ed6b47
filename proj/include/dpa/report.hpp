#pragma once

#include <json.hpp>

#include "dpa/core_model.hpp"
#include "dpa/nonclassicality.hpp"
#include "dpa/verification.hpp"

namespace dpa {

nlohmann::json to_json(const ModelParams& params);

/// {nbar, r, alpha_c, tangency_u, mechanism, zeros[]}; zeros holds the u where min Q_M touches 0.
nlohmann::json critical_record(double nbar, double r, const CriticalPointResult& res);

/// {nbar, r, alpha, kind, q0, zeros[]}.
nlohmann::json classification_record(double nbar, double r, double alpha_mag, const Classification& cls);

/// List of {quantity, params, u, lambda, closed_form, oracle, rel_err, N_used, pass}.
nlohmann::json verification_json(const VerificationReport& report);

}  // namespace dpa
