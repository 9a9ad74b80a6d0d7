#include "liftspectra/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>

namespace liftspectra {

namespace {

Eigen::MatrixXd adjacency_matrix(const BaseGraph& g) {
    const auto m = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) a(e.u, e.u) += 2.0;
        else {
            a(e.u, e.v) += 1.0;
            a(e.v, e.u) += 1.0;
        }
    }
    return a;
}

} // namespace

Spectrum base_spectrum(const BaseGraph& g) {
    if (g.vertex_count() > kDenseOrderCap)
        throw SolverError("graph order " + std::to_string(g.vertex_count()) +
                          " exceeds dense solver cap " + std::to_string(kDenseOrderCap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(adjacency_matrix(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    Spectrum s;
    s.declared_degree = g.degree();
    const auto& vals = solver.eigenvalues();
    s.values.assign(vals.data(), vals.data() + vals.size());
    std::reverse(s.values.begin(), s.values.end()); // ascending -> non-increasing
    return s;
}

double lambda_of(const BaseGraph& g) {
    if (!g.is_connected())
        throw InputError("lambda is ambiguous for disconnected graphs "
                         "(top eigenvalue has multiplicity > 1)");
    const Spectrum s = base_spectrum(g);
    double lam = 0.0;
    for (std::size_t i = 1; i < s.values.size(); ++i) // skip one copy of the top
        lam = std::max(lam, std::abs(s.values[i]));
    return lam;
}

double universal_cover_radius(std::uint32_t d) {
    if (d < 2) throw InputError("universal cover radius needs d >= 2");
    return 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out = "index,eigenvalue\n";
    char buf[32];
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, s.values[i]);
        out.append(buf, end);
        out += '\n';
    }
    return out;
}

} // namespace liftspectra
