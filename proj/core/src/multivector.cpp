#include "cliffspec/multivector.hpp"

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>

namespace cliffspec {

namespace {

void check_generator_count(int n) {
    if (n < 1 || n > kMaxGenerators) {
        throw dimension_error("generator count must be between 1 and " +
                              std::to_string(kMaxGenerators) + ", got " + std::to_string(n));
    }
}

void check_same_algebra(const Multivector& a, const Multivector& b, const char* op) {
    if (a.generators() != b.generators()) {
        throw dimension_error(std::string(op) + ": operands live in different algebras (n=" +
                              std::to_string(a.generators()) + " vs n=" +
                              std::to_string(b.generators()) + ")");
    }
}

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v) {
    for (int prec = 15; prec <= 17; ++prec) {
        std::ostringstream os;
        os << std::setprecision(prec) << v;
        if (std::strtod(os.str().c_str(), nullptr) == v) return os.str();
    }
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

int blade_grade(unsigned mask) {
    return std::popcount(mask);
}

std::string blade_name(unsigned mask) {
    if (mask == 0) return "1";
    std::string name = "e";
    for (int j = 0; j < kMaxGenerators; ++j) {
        if (mask & (1u << j)) name += static_cast<char>('1' + j);
    }
    return name;
}

BladeSignTable::BladeSignTable(int n) : n_(n), dim_(1 << n) {
    check_generator_count(n);
    table_.resize(std::size_t(dim_) * dim_);
    for (unsigned p = 0; p < unsigned(dim_); ++p) {
        for (unsigned q = 0; q < unsigned(dim_); ++q) {
            table_[(std::size_t(p) << n_) | q] = static_cast<std::int8_t>(compute_sign(p, q));
        }
    }
}

int BladeSignTable::compute_sign(unsigned p, unsigned q) {
    int swaps = 0;
    for (unsigned t = p >> 1; t != 0; t >>= 1) swaps += std::popcount(t & q);
    swaps += std::popcount(p & q);
    return (swaps & 1) ? -1 : +1;
}

const BladeSignTable& BladeSignTable::get(int n) {
    check_generator_count(n);
    static std::array<std::unique_ptr<BladeSignTable>, kMaxGenerators + 1> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (!cache[n]) cache[n] = std::make_unique<BladeSignTable>(n);
    return *cache[n];
}

Multivector::Multivector(int n) : n_(n) {
    check_generator_count(n);
    coeff_.assign(std::size_t(1) << n, 0.0);
}

Multivector::Multivector(int n, double scalar_value) : Multivector(n) {
    coeff_[0] = scalar_value;
}

Multivector Multivector::basis_vector(int n, int j) {
    check_generator_count(n);
    if (j < 1 || j > n) {
        throw dimension_error("basis vector index " + std::to_string(j) +
                              " outside 1.." + std::to_string(n));
    }
    Multivector out(n);
    out.coeff_[1u << (j - 1)] = 1.0;
    return out;
}

Multivector Multivector::blade(int n, unsigned mask, double coeff) {
    check_generator_count(n);
    if (mask >= (1u << n)) {
        throw dimension_error("blade mask " + std::to_string(mask) +
                              " outside algebra with n=" + std::to_string(n));
    }
    Multivector out(n);
    out.coeff_[mask] = coeff;
    return out;
}

Multivector Multivector::grade_part(int r) const {
    if (r < 0 || r > n_) throw dimension_error("grade " + std::to_string(r) + " outside 0..n");
    Multivector out(n_);
    for (unsigned mask = 0; mask < unsigned(size()); ++mask) {
        if (blade_grade(mask) == r) out.coeff_[mask] = coeff_[mask];
    }
    return out;
}

bool Multivector::is_zero(double tol) const {
    for (double c : coeff_) {
        if (std::abs(c) > tol) return false;
    }
    return true;
}

double Multivector::norm() const {
    double s = 0.0;
    for (double c : coeff_) s += c * c;
    return std::sqrt(s);
}

Multivector Multivector::operator-() const {
    Multivector out(*this);
    for (double& c : out.coeff_) c = -c;
    return out;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
    check_same_algebra(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
    check_same_algebra(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
    return *this;
}

Multivector& Multivector::operator*=(double s) {
    for (double& c : coeff_) c *= s;
    return *this;
}

Multivector& Multivector::operator/=(double s) {
    for (double& c : coeff_) c /= s;
    return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }
Multivector operator/(Multivector a, double s) { return a /= s; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
    check_same_algebra(a, b, "geometric_product");
    const BladeSignTable& table = BladeSignTable::get(a.generators());
    Multivector out(a.generators());
    const unsigned dim = unsigned(a.size());
    for (unsigned p = 0; p < dim; ++p) {
        const double ap = a[p];
        if (ap == 0.0) continue;
        for (unsigned q = 0; q < dim; ++q) {
            const double bq = b[q];
            if (bq == 0.0) continue;
            out[p ^ q] += table.sign(p, q) * ap * bq;
        }
    }
    return out;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
    return geometric_product(a, b);
}

Multivector pow(const Multivector& a, int k) {
    if (k < 0) throw domain_error("pow: exponent must be nonnegative");
    Multivector out(a.generators(), 1.0);
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

namespace {

Multivector apply_grade_signs(const Multivector& a, int (*sign_of_grade)(int)) {
    Multivector out(a.generators());
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) {
        out[mask] = sign_of_grade(blade_grade(mask)) * a[mask];
    }
    return out;
}

} // namespace

Multivector reversion(const Multivector& a) {
    return apply_grade_signs(a, [](int r) { return (r * (r - 1) / 2) % 2 == 0 ? 1 : -1; });
}

Multivector grade_involution(const Multivector& a) {
    return apply_grade_signs(a, [](int r) { return r % 2 == 0 ? 1 : -1; });
}

Multivector conjugation(const Multivector& a) {
    return apply_grade_signs(a, [](int r) { return (r * (r + 1) / 2) % 2 == 0 ? 1 : -1; });
}

Multivector vector_embed(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    check_generator_count(n);
    Multivector out(n);
    for (int j = 0; j < n; ++j) out[1u << j] = x[std::size_t(j)];
    return out;
}

bool is_vector(const Multivector& a, double tol) {
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) {
        if (blade_grade(mask) != 1 && std::abs(a[mask]) > tol) return false;
    }
    return true;
}

std::vector<double> vector_part(const Multivector& a) {
    std::vector<double> x(std::size_t(a.generators()));
    for (int j = 0; j < a.generators(); ++j) x[std::size_t(j)] = a[1u << j];
    return x;
}

Multivector kelvin_inverse(const Multivector& x, double tol) {
    if (!is_vector(x, tol)) throw domain_error("kelvin_inverse: argument is not a vector");
    double norm2 = 0.0;
    for (int j = 0; j < x.generators(); ++j) {
        const double c = x[1u << j];
        norm2 += c * c;
    }
    if (norm2 <= tol * tol) throw singular_error("kelvin_inverse: vector too close to zero");
    return conjugation(x) / norm2;
}

Multivector mv_inverse(const Multivector& a, double tol) {
    const int n = a.generators();
    const int dim = a.size();
    const BladeSignTable& table = BladeSignTable::get(n);

    Eigen::MatrixXd rep = Eigen::MatrixXd::Zero(dim, dim);
    for (unsigned p = 0; p < unsigned(dim); ++p) {
        const double ap = a[p];
        if (ap == 0.0) continue;
        for (unsigned q = 0; q < unsigned(dim); ++q) {
            rep(p ^ q, q) += table.sign(p, q) * ap;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(dim - 1) <= tol * sv(0)) {
        throw singular_error("mv_inverse: element is singular or too ill-conditioned (tol=" +
                             format_double(tol) + ")");
    }

    Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
    unit(0) = 1.0;
    const Eigen::VectorXd sol = svd.solve(unit);

    Multivector out(n);
    for (int i = 0; i < dim; ++i) out[unsigned(i)] = sol(i);
    return out;
}

double modulus(const Multivector& a, double tol) {
    const Multivector prod = a * conjugation(a);
    const double scalar = prod.scalar_part();
    double residue2 = 0.0;
    for (unsigned mask = 1; mask < unsigned(prod.size()); ++mask) {
        residue2 += prod[mask] * prod[mask];
    }
    const double scale = std::max(1.0, a.norm() * a.norm());
    if (std::sqrt(residue2) > tol * scale || scalar < -tol * scale) {
        throw domain_error("modulus: a * conjugation(a) is not a nonnegative scalar for \"" +
                           to_string(a) + "\"");
    }
    return std::sqrt(std::max(0.0, scalar));
}

bool in_gamma(const Multivector& a, double tol) {
    Multivector inv(a.generators());
    try {
        inv = mv_inverse(a, tol);
    } catch (const singular_error&) {
        return false;
    }
    const Multivector twisted = grade_involution(a);
    for (int j = 1; j <= a.generators(); ++j) {
        const Multivector image = twisted * Multivector::basis_vector(a.generators(), j) * inv;
        if (!is_vector(image, tol * std::max(1.0, image.norm()))) return false;
    }
    return true;
}

bool in_pin(const Multivector& a, double tol) {
    if (!in_gamma(a, tol)) return false;
    Multivector unit = a * conjugation(a);
    unit[0] -= 1.0;
    return unit.norm() <= tol;
}

bool approx_equal(const Multivector& a, const Multivector& b, double tol) {
    if (a.generators() != b.generators()) return false;
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) {
        if (std::abs(a[mask] - b[mask]) > tol) return false;
    }
    return true;
}

std::string to_string(const Multivector& a) {
    std::string out;
    bool first = true;
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) {
        const double c = a[mask];
        if (c == 0.0) continue;
        if (first) {
            if (c < 0.0) out += "-";
        } else {
            out += (c < 0.0) ? " - " : " + ";
        }
        const double mag = std::abs(c);
        if (mask == 0) {
            out += format_double(mag);
        } else if (mag == 1.0) {
            out += blade_name(mask);
        } else {
            out += format_double(mag);
            out += "*";
            out += blade_name(mask);
        }
        first = false;
    }
    return first ? "0" : out;
}

namespace {

struct Scanner {
    const std::string& text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error("multivector literal: " + what + " at position " +
                          std::to_string(pos) + " in \"" + text + "\"");
    }
};

unsigned parse_blade(Scanner& sc, int n) {
    ++sc.pos; // the leading 'e'
    unsigned mask = 0;
    int prev = 0;
    bool any = false;
    while (!sc.done() && std::isdigit(static_cast<unsigned char>(sc.peek()))) {
        const int d = sc.peek() - '0';
        if (d == 0) sc.fail("generator indices start at 1");
        if (d <= prev) sc.fail("blade indices must be strictly ascending");
        if (d > n) sc.fail("generator e" + std::to_string(d) + " outside algebra with n=" +
                           std::to_string(n));
        mask |= 1u << (d - 1);
        prev = d;
        ++sc.pos;
        any = true;
    }
    if (!any) sc.fail("expected generator indices after 'e'");
    return mask;
}

bool at_blade(const Scanner& sc) {
    return !sc.done() && sc.peek() == 'e' && sc.pos + 1 < sc.text.size() &&
           std::isdigit(static_cast<unsigned char>(sc.text[sc.pos + 1]));
}

} // namespace

Multivector parse_multivector(int n, const std::string& text) {
    check_generator_count(n);
    Multivector out(n);
    Scanner sc{text};

    sc.skip_ws();
    if (sc.done()) sc.fail("empty input");

    bool first = true;
    while (true) {
        sc.skip_ws();
        double sign = 1.0;
        if (!sc.done() && (sc.peek() == '+' || sc.peek() == '-')) {
            sign = (sc.peek() == '-') ? -1.0 : 1.0;
            ++sc.pos;
            sc.skip_ws();
        } else if (!first) {
            sc.fail("expected '+' or '-' between terms");
        }

        double coeff = 1.0;
        unsigned mask = 0;
        if (at_blade(sc)) {
            mask = parse_blade(sc, n);
        } else {
            errno = 0;
            const char* begin = sc.text.c_str() + sc.pos;
            char* end = nullptr;
            coeff = std::strtod(begin, &end);
            if (end == begin) sc.fail("expected a number or blade");
            if (!std::isfinite(coeff)) sc.fail("coefficient is not finite");
            sc.pos += std::size_t(end - begin);
            sc.skip_ws();
            if (!sc.done() && sc.peek() == '*') {
                ++sc.pos;
                sc.skip_ws();
                if (!at_blade(sc)) sc.fail("expected a blade after '*'");
                mask = parse_blade(sc, n);
            }
        }
        out[mask] += sign * coeff;
        first = false;

        sc.skip_ws();
        if (sc.done()) break;
        if (sc.peek() != '+' && sc.peek() != '-') sc.fail("unexpected trailing input");
    }
    return out;
}

} // namespace cliffspec
