#include "uur/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uur {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& text, const std::string& context) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("bad number '" + text + "' in " + context);
    }
    if (used != text.size()) throw ParseError("bad number '" + text + "' in " + context);
    return v;
}

// factor := number | sqrt( number [/ number] )
double parse_factor(const std::string& text, const std::string& context) {
    if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') {
        const std::string inner = text.substr(5, text.size() - 6);
        const std::size_t slash = inner.find('/');
        double v;
        if (slash == std::string::npos) {
            v = parse_number(trim(inner), context);
        } else {
            v = parse_number(trim(inner.substr(0, slash)), context) /
                parse_number(trim(inner.substr(slash + 1)), context);
        }
        if (v < 0.0) throw ParseError("sqrt of negative value in " + context);
        return std::sqrt(v);
    }
    return parse_number(text, context);
}

}  // namespace

double parse_real_expr(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) throw ParseError("empty numeric expression");
    std::string body = text;
    double sign = 1.0;
    if (body[0] == '-') {
        sign = -1.0;
        body = trim(body.substr(1));
    } else if (body[0] == '+') {
        body = trim(body.substr(1));
    }
    if (body.empty()) throw ParseError("empty numeric expression after sign in '" + text + "'");

    // Split at a top-level '/': the one not inside sqrt(...).
    std::size_t depth = 0, slash = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        else if (body[i] == ')') { if (depth == 0) throw ParseError("unbalanced ')' in '" + text + "'"); --depth; }
        else if (body[i] == '/' && depth == 0) { slash = i; break; }
    }
    if (depth != 0 && slash == std::string::npos) {
        // fall through: parse_factor will reject unbalanced input
    }
    if (slash == std::string::npos) return sign * parse_factor(body, "'" + text + "'");
    const double num = parse_factor(trim(body.substr(0, slash)), "'" + text + "'");
    const double den = parse_factor(trim(body.substr(slash + 1)), "'" + text + "'");
    if (den == 0.0) throw ParseError("division by zero in '" + text + "'");
    return sign * num / den;
}

namespace {

struct Line {
    std::string text;
    int number = 0;
};

/// Lines with comments stripped and blanks dropped.
std::vector<Line> significant_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string t = trim(raw);
        if (!t.empty()) lines.push_back({t, number});
    }
    return lines;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw ParseError(os.str());
}

/// One row of d complex entries "[re,im] [re,im] ...".
CVector parse_row(const Line& line, int d) {
    CVector row(d);
    std::size_t pos = 0;
    for (int j = 0; j < d; ++j) {
        const std::size_t open = line.text.find('[', pos);
        if (open == std::string::npos) fail(line.number, "expected " + std::to_string(d) + " entries, found " + std::to_string(j));
        const std::size_t close = line.text.find(']', open);
        if (close == std::string::npos) fail(line.number, "unterminated '['");
        const std::string inside = line.text.substr(open + 1, close - open - 1);
        const std::size_t comma = inside.find(',');
        if (comma == std::string::npos) fail(line.number, "entry '" + inside + "' needs the form [re,im]");
        try {
            row(j) = Complex(parse_real_expr(inside.substr(0, comma)),
                             parse_real_expr(inside.substr(comma + 1)));
        } catch (const ParseError& e) {
            fail(line.number, e.what());
        }
        pos = close + 1;
    }
    if (line.text.find('[', pos) != std::string::npos) {
        fail(line.number, "more than " + std::to_string(d) + " entries on the line");
    }
    return row;
}

}  // namespace

bool MeasurementFile::is_basis_pair() const {
    return measurements.size() == 2 &&
           std::holds_alternative<OrthonormalBasis>(measurements[0]) &&
           std::holds_alternative<OrthonormalBasis>(measurements[1]);
}

std::pair<OrthonormalBasis, OrthonormalBasis> MeasurementFile::basis_pair() const {
    if (!is_basis_pair()) throw InvariantError("measurement file is not a basis pair");
    return {std::get<OrthonormalBasis>(measurements[0]),
            std::get<OrthonormalBasis>(measurements[1])};
}

MeasurementEnsemble MeasurementFile::ensemble() const {
    std::vector<Povm> povms;
    povms.reserve(measurements.size());
    for (const auto& m : measurements) {
        if (std::holds_alternative<OrthonormalBasis>(m)) {
            povms.push_back(Povm::from_basis(std::get<OrthonormalBasis>(m)));
        } else {
            povms.push_back(std::get<Povm>(m));
        }
    }
    return MeasurementEnsemble(std::move(povms));
}

MeasurementFile parse_measurement_file(std::istream& in) {
    const std::vector<Line> lines = significant_lines(in);
    if (lines.empty()) throw ParseError("empty measurement file");

    std::size_t at = 0;
    auto next = [&]() -> const Line& {
        if (at >= lines.size()) fail(lines.back().number, "unexpected end of file");
        return lines[at++];
    };

    const Line& head = next();
    std::istringstream hs(head.text);
    std::string word;
    int dim = 0;
    hs >> word >> dim;
    if (word != "dim" || hs.fail() || dim < 2) {
        fail(head.number, "expected 'dim <d>' with d >= 2, got '" + head.text + "'");
    }

    MeasurementFile file;
    file.dim = dim;
    while (at < lines.size()) {
        const Line& header = next();
        std::istringstream ms(header.text);
        std::string kind;
        ms >> kind;
        if (kind == "basis") {
            CMatrix u(dim, dim);
            for (int m = 0; m < dim; ++m) u.col(m) = parse_row(next(), dim);
            try {
                file.measurements.emplace_back(OrthonormalBasis(std::move(u)));
            } catch (const InvariantError& e) {
                std::ostringstream os;
                os << "line " << header.number << ": basis rejected: " << e.what();
                throw InvariantError(os.str());
            }
        } else if (kind == "povm") {
            int count = 0;
            ms >> count;
            if (ms.fail() || count < 1) fail(header.number, "expected 'povm <count>'");
            std::vector<CMatrix> elements;
            elements.reserve(static_cast<std::size_t>(count));
            for (int e = 0; e < count; ++e) {
                CMatrix el(dim, dim);
                for (int r = 0; r < dim; ++r) el.row(r) = parse_row(next(), dim).transpose();
                elements.push_back(std::move(el));
            }
            try {
                file.measurements.emplace_back(Povm(std::move(elements)));
            } catch (const InvariantError& e) {
                std::ostringstream os;
                os << "line " << header.number << ": povm rejected: " << e.what();
                throw InvariantError(os.str());
            }
        } else {
            fail(header.number, "expected 'basis' or 'povm <count>', got '" + header.text + "'");
        }
    }
    if (file.measurements.size() < 2) {
        throw ParseError("measurement file needs at least 2 measurements, has " +
                         std::to_string(file.measurements.size()));
    }
    return file;
}

MeasurementFile parse_measurement_file_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_measurement_file(in);
}

std::string example1_file_text() {
    return
        "# Three d=4 bases; every pair shares one eigenvector, no vector is\n"
        "# common to all three.\n"
        "dim 4\n"
        "basis\n"
        "[1,0] [0,0] [0,0] [0,0]\n"
        "[0,0] [1,0] [0,0] [0,0]\n"
        "[0,0] [0,0] [1,0] [0,0]\n"
        "[0,0] [0,0] [0,0] [1,0]\n"
        "basis\n"
        "[1,0] [0,0] [0,0] [0,0]\n"
        "[0,0] [0,0] [1/sqrt(2),0] [1/sqrt(2),0]\n"
        "[0,0] [1/sqrt(3),0] [1/sqrt(3),0] [-1/sqrt(3),0]\n"
        "[0,0] [2/sqrt(6),0] [-1/sqrt(6),0] [1/sqrt(6),0]\n"
        "basis\n"
        "[0,0] [0,0] [1/sqrt(2),0] [1/sqrt(2),0]\n"
        "[0,0] [1,0] [0,0] [0,0]\n"
        "[1/sqrt(3),0] [0,0] [1/sqrt(3),0] [-1/sqrt(3),0]\n"
        "[2/sqrt(6),0] [0,0] [-1/sqrt(6),0] [1/sqrt(6),0]\n";
}

UncertaintyMeasure parse_measure(const std::string& text) {
    if (text == "shannon") return UncertaintyMeasure::shannon();
    if (text == "minentropy") return UncertaintyMeasure::min_entropy();
    if (text == "neglogmin") return UncertaintyMeasure::neg_log_min_nonzero();
    if (text.rfind("renyi:", 0) == 0) {
        double alpha = 0.0;
        try {
            alpha = std::stod(text.substr(6));
        } catch (const std::exception&) {
            throw ParseError("bad measure '" + text + "'");
        }
        try {
            return UncertaintyMeasure::renyi(alpha);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown measure '" + text +
                     "' (use shannon | renyi:<alpha> | minentropy | neglogmin)");
}

}  // namespace uur
