#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "uur/multi_bound.hpp"
#include "uur/types.hpp"

namespace uur {

/// Parsed measurement-set file: a dimension and two or more measurements,
/// each an orthonormal basis or a POVM.
struct MeasurementFile {
    int dim = 0;
    std::vector<std::variant<OrthonormalBasis, Povm>> measurements;

    bool is_basis_pair() const;
    /// The two bases, when is_basis_pair().
    std::pair<OrthonormalBasis, OrthonormalBasis> basis_pair() const;
    MeasurementEnsemble ensemble() const;
};

/// Text format:
///   dim 4
///   basis          <- d lines follow, one vector per line, d entries each
///   [1,0] [0,0] [0,0] [0,0]
///   ...
///   povm 3         <- 3 elements follow, each d lines of d entries
///   ...
/// Entries are [re,im] with real expressions: decimals, a/b, sqrt(b),
/// a/sqrt(b), sqrt(a/b), optionally negated. '#' starts a comment.
MeasurementFile parse_measurement_file(std::istream& in);
MeasurementFile parse_measurement_file_path(const std::string& path);

/// Evaluate one real expression from the grammar above.
double parse_real_expr(const std::string& text);

/// Shortest representation that round-trips a double exactly (%.17g).
std::string format_double(double v);

/// The pairwise-trivial three-basis fixture in the file format, with exact
/// surd amplitudes.
std::string example1_file_text();

/// Parse "shannon", "renyi:<alpha>", "minentropy" or "neglogmin".
UncertaintyMeasure parse_measure(const std::string& text);

}  // namespace uur
