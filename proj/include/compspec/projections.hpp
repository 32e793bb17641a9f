#pragma once

#include <cstddef>
#include <vector>

#include "compspec/koenigs.hpp"
#include "compspec/series.hpp"
#include "compspec/tolerances.hpp"

namespace compspec {

// One index vector m = (m_1, ..., m_n) with sum_j j * m_j = n.
struct PartitionTerm {
    std::vector<int> m;
    int weight = 0;  // |m| = sum_j m_j
    Complex coefficient{};
};

// All m in N_0^n with sum_j j m_j = n (1 <= n <= 20), in descending
// lexicographic order. Coefficients are left zero.
std::vector<PartitionTerm> enumerate_partitions(int n);

// Faa di Bruno coefficients n! / prod(m_j!) * prod (phi^(j)(alpha) / j!)^m_j
// read from the Taylor coefficients of phi about its fixed point.
std::vector<PartitionTerm> faa_di_bruno_terms(const TruncatedPowerSeries& phi_series, int n);

// (g o phi)^(n)(alpha) = sum_{m in J_n} C_m^n g^(|m|)(alpha).
Complex faa_di_bruno_derivative(const TruncatedPowerSeries& g, const TruncatedPowerSeries& phi_series, int n,
                                const Tolerances& tol = {});

// The rank-one projections P_n f = <Psi_n, f> kappa^n with
//     <Psi_n, f> = sum_{m<=n} c_{n,m} f^(m)(alpha).
class ProjectionFamily {
public:
    ProjectionFamily(KoenigsData koenigs, std::vector<std::vector<Complex>> functionals);

    const KoenigsData& koenigs() const noexcept { return koenigs_; }
    std::size_t max_n() const noexcept { return functionals_.size() - 1; }
    // c_{n,0..n}
    const std::vector<Complex>& functional(std::size_t n) const;
    Complex coefficient(std::size_t n, std::size_t m) const;

    // <Psi_n, f> for f expanded about alpha.
    Complex psi(std::size_t n, const TruncatedPowerSeries& f) const;

private:
    KoenigsData koenigs_;
    std::vector<std::vector<Complex>> functionals_;
};

// Materialises c_{n,m} by running
//     P_n f = (1/n!) (f - sum_{k<n} P_k f)^(n)(alpha) kappa^n
// on each monomial (z - alpha)^m.
ProjectionFamily build_projection_family(const KoenigsData& kd, std::size_t max_n);

TruncatedPowerSeries apply_projection(const ProjectionFamily& pf, std::size_t n, const TruncatedPowerSeries& f);
// Q_n = P_0 + ... + P_n
TruncatedPowerSeries apply_Qn(const ProjectionFamily& pf, std::size_t n, const TruncatedPowerSeries& f);

// Printed closed forms for P_0..P_3 in terms of lambda_1, phi''(alpha) and
// phi'''(alpha). Independent of build_projection_family; used to check it.
std::vector<Complex> closed_form_P(std::size_t n, const TruncatedPowerSeries& phi_series, const Tolerances& tol = {});

}  // namespace compspec
