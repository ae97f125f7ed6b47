#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dpa/core_model.hpp"
#include "dpa/oracle.hpp"

namespace dpa {

/// Closed forms vs the Fock-space oracle over a tensor grid of (nbar, r, |alpha|, u).
struct VerificationGrid {
    std::vector<double> nbar{0.0, 0.2, 1.0};
    std::vector<double> squeeze{0.05, 0.2, 1.0};
    std::vector<double> alpha{0.0, 0.5, 2.0};
    std::vector<double> u{0.0, 0.5, 2.0};
    std::vector<double> lambdas{0.0, 0.7, 0.5 * std::numbers::pi};
    double theta = 0.0;
    double phi = 0.0;
    // Hamiltonian-evolution subgrid (small parameters, dense matrices).
    std::vector<double> ham_nbar{0.0, 1.0};
    std::vector<double> ham_squeeze{0.2, 0.5};
    std::vector<double> ham_alpha{0.5, 1.0};
    std::vector<double> ham_u{0.0, 0.3};
};

struct VerifyOptions {
    double tol = 1e-6;
    oracle::MomentOptions moments;
    oracle::FockOptions dense;
    unsigned workers = 1;
};

struct VerificationRecord {
    std::string quantity;
    ModelParams params;
    double u = 0;
    std::optional<double> lambda;
    double closed_form = 0;
    double oracle = 0;
    double rel_err = 0;
    int n_used = 0;
    bool pass = false;
    std::string note;
};

struct VerificationReport {
    std::vector<VerificationRecord> records;
    bool all_pass() const;
    std::size_t failures() const;
};

/// |closed - oracle| / max(|oracle|, 1e-9).
double relative_error(double closed_form, double oracle_value);

/// Throws std::invalid_argument on an empty grid axis.
VerificationReport run_verification(const VerificationGrid& grid, const VerifyOptions& opts = {});

}  // namespace dpa
