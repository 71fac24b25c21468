#include "uur/bound_vector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace uur {

UncertaintyVector::UncertaintyVector(const BoundSequence& seq) {
    const auto n = static_cast<Eigen::Index>(seq.values.size());
    if (n == 0) throw InvariantError("UncertaintyVector: empty bound sequence");
    raw_ = RVector::Zero(n);
    double prev = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double v = seq.values[static_cast<std::size_t>(k)];
        // The sequence is nondecreasing up to eigensolver noise; clamp dust.
        raw_(k) = std::max(0.0, v - prev);
        prev = v;
    }
    const double final = seq.values.back();
    if (std::abs(final - 1.0) > tol::prob_sum) {
        std::ostringstream os;
        os << "UncertaintyVector: sequence ends at " << final << ", expected 1";
        throw InvariantError(os.str());
    }
    sorted_ = raw_;
    std::sort(sorted_.data(), sorted_.data() + sorted_.size(), std::greater<double>());
}

MajorizationReport check_majorization(const ProbVector& joint, const UncertaintyVector& bound) {
    MajorizationReport report;
    report.margins = majorization_margins(joint, bound.sorted_prob());
    report.min_margin = report.margins.minCoeff();
    report.ok = report.min_margin >= -tol::majorization;
    return report;
}

}  // namespace uur
