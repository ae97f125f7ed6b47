#include "dpa/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "dpa/errors.hpp"
#include "dpa/statistics.hpp"

namespace dpa {

bool VerificationReport::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
}

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
}

double relative_error(double closed_form, double oracle_value) {
    return std::abs(closed_form - oracle_value) / std::max(std::abs(oracle_value), 1e-9);
}

namespace {

struct Cell {
    ModelParams params;
    double u = 0;
    bool hamiltonian = false;
};

VerificationRecord make_record(std::string quantity, const Cell& cell, std::optional<double> lambda, double closed,
                               double oracle_value, int dim, double tol) {
    VerificationRecord rec;
    rec.quantity = std::move(quantity);
    rec.params = cell.params;
    rec.u = cell.u;
    rec.lambda = lambda;
    rec.closed_form = closed;
    rec.oracle = oracle_value;
    rec.rel_err = relative_error(closed, oracle_value);
    rec.n_used = dim;
    rec.pass = rec.rel_err <= tol;
    return rec;
}

std::vector<VerificationRecord> check_moments(const Cell& cell, const VerificationGrid& grid, const VerifyOptions& opts) {
    std::vector<VerificationRecord> out;
    const EvolvedState state = evolved_state(cell.params, DimensionlessTime(cell.u));
    oracle::FockMoments fm;
    try {
        fm = oracle::fock_moments(state, grid.lambdas, opts.moments);
    } catch (const TruncationError& e) {
        VerificationRecord rec;
        rec.quantity = "truncation";
        rec.params = cell.params;
        rec.u = cell.u;
        rec.rel_err = INFINITY;
        rec.note = e.what();
        out.push_back(std::move(rec));
        return out;
    }
    for (const auto& q : fm.quadratures) {
        out.push_back(make_record("quad_mean", cell, q.lambda, quad_mean(state, q.lambda), q.mean, fm.dim, opts.tol));
        out.push_back(
            make_record("quad_variance", cell, q.lambda, quad_variance(state, q.lambda), q.variance, fm.dim, opts.tol));
    }
    out.push_back(make_record("mean_photon", cell, std::nullopt, mean_photon(state), fm.mean_n, fm.dim, opts.tol));
    out.push_back(make_record("photon_variance", cell, std::nullopt, photon_variance(state), fm.var_n, fm.dim, opts.tol));
    if (fm.mean_n > 0.0) {
        const double q_oracle = (fm.var_n - fm.mean_n) / fm.mean_n;
        out.push_back(make_record("mandel_q", cell, std::nullopt, mandel_q(state), q_oracle, fm.dim, opts.tol));
    }
    return out;
}

std::vector<VerificationRecord> check_hamiltonian(const Cell& cell, const VerifyOptions& opts) {
    std::vector<VerificationRecord> out;
    const EvolvedState state = evolved_state(cell.params, DimensionlessTime(cell.u));
    try {
        const oracle::FockState built = oracle::build_rho_evolved(state, opts.dense);
        const double total_time = cell.params.prep_time * (1.0 + cell.u / cell.params.squeeze_mag);
        const oracle::FockMatrix evolved =
            oracle::evolve_via_hamiltonian(cell.params, total_time, built.work_dim).topLeftCorner(built.dim, built.dim);
        const double dist = oracle::trace_distance(evolved, built.rho);
        VerificationRecord rec = make_record("hamiltonian_trace_distance", cell, std::nullopt, 0.0, dist, built.dim, opts.tol);
        rec.rel_err = dist;
        rec.pass = dist <= opts.tol;
        out.push_back(std::move(rec));
    } catch (const TruncationError& e) {
        VerificationRecord rec;
        rec.quantity = "truncation";
        rec.params = cell.params;
        rec.u = cell.u;
        rec.rel_err = INFINITY;
        rec.note = e.what();
        out.push_back(std::move(rec));
    }
    return out;
}

void require_nonempty(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw std::invalid_argument(std::string("verification grid axis '") + name + "' is empty");
}

}  // namespace

VerificationReport run_verification(const VerificationGrid& grid, const VerifyOptions& opts) {
    require_nonempty(grid.nbar, "nbar");
    require_nonempty(grid.squeeze, "r");
    require_nonempty(grid.alpha, "alpha");
    require_nonempty(grid.u, "u");
    require_nonempty(grid.lambdas, "lambda");

    std::vector<Cell> cells;
    auto add = [&](double nbar, double r, double alpha, double u, bool ham) {
        Cell c;
        c.params.nbar = nbar;
        c.params.squeeze_mag = r;
        c.params.alpha_mag = alpha;
        c.params.alpha_phase = grid.phi;
        c.params.squeeze_phase = grid.theta;
        c.params.validate();
        c.u = u;
        c.hamiltonian = ham;
        cells.push_back(c);
    };
    for (double n : grid.nbar)
        for (double r : grid.squeeze)
            for (double a : grid.alpha)
                for (double u : grid.u) add(n, r, a, u, false);
    for (double n : grid.ham_nbar)
        for (double r : grid.ham_squeeze)
            for (double a : grid.ham_alpha)
                for (double u : grid.ham_u) add(n, r, a, u, true);

    std::vector<std::vector<VerificationRecord>> per_cell(cells.size());
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < cells.size(); i += step) {
            per_cell[i] = cells[i].hamiltonian ? check_hamiltonian(cells[i], opts) : check_moments(cells[i], grid, opts);
        }
    };
    const unsigned workers = std::max(1u, opts.workers);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }

    VerificationReport report;
    for (auto& recs : per_cell) {
        for (auto& r : recs) report.records.push_back(std::move(r));
    }
    return report;
}

}  // namespace dpa
