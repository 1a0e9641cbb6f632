#include "rokhlin/circle_fn.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rokhlin {

namespace {

// Coalesce sorted (position, value) pairs that lie within kCoalesceTolerance,
// including the pair formed by the last point and the first point + 1.
void coalesce(std::vector<double>& xs, std::vector<double>& vs)
{
    if (xs.empty()) {
        return;
    }
    std::vector<double> out_x;
    std::vector<double> out_v;
    out_x.reserve(xs.size());
    out_v.reserve(vs.size());
    std::size_t i = 0;
    while (i < xs.size()) {
        double sum_x = xs[i];
        double sum_v = vs[i];
        std::size_t count = 1;
        std::size_t j = i + 1;
        while (j < xs.size() && xs[j] - xs[j - 1] < kCoalesceTolerance) {
            sum_x += xs[j];
            sum_v += vs[j];
            ++count;
            ++j;
        }
        out_x.push_back(sum_x / static_cast<double>(count));
        out_v.push_back(sum_v / static_cast<double>(count));
        i = j;
    }
    if (out_x.size() > 1 && out_x.front() + 1.0 - out_x.back() < kCoalesceTolerance) {
        out_v.front() = 0.5 * (out_v.front() + out_v.back());
        out_x.pop_back();
        out_v.pop_back();
    }
    xs = std::move(out_x);
    vs = std::move(out_v);
}

struct Segment {
    double left;
    double right;
    double v_left;
    double v_right;
};

// Segment i runs from breakpoint i to breakpoint i+1; the last one wraps.
Segment segment(const std::vector<double>& b, const std::vector<double>& v, std::size_t i)
{
    const std::size_t n = b.size();
    if (i + 1 < n) {
        return {b[i], b[i + 1], v[i], v[i + 1]};
    }
    return {b[n - 1], b[0] + 1.0, v[n - 1], v[0]};
}

// Evaluates f at nondecreasing points of [0, 1) with a moving segment index.
class Sweep {
public:
    explicit Sweep(const PLFunction& f) : b_(f.breakpoints()), v_(f.values()) {}

    double at(double t)
    {
        const std::size_t n = b_.size();
        if (n == 1) {
            return v_[0];
        }
        while (next_ < n && b_[next_] <= t) {
            ++next_;
        }
        const Segment s = segment(b_, v_, next_ == 0 ? n - 1 : next_ - 1);
        const double pos = next_ == 0 ? t + 1.0 : t;
        return s.v_left + (pos - s.left) / (s.right - s.left) * (s.v_right - s.v_left);
    }

private:
    const std::vector<double>& b_;
    const std::vector<double>& v_;
    std::size_t next_ = 0;
};

}  // namespace

double wrap_unit(double x)
{
    double r = x - std::floor(x);
    if (r >= 1.0) {
        r = 0.0;
    }
    return r;
}

PLFunction::PLFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values))
{
    if (breakpoints_.empty()) {
        throw std::invalid_argument("PLFunction needs at least one breakpoint");
    }
    if (breakpoints_.size() != values_.size()) {
        throw std::invalid_argument("PLFunction breakpoints and values differ in length");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double b = breakpoints_[i];
        if (!std::isfinite(b) || b < 0.0 || b >= 1.0) {
            throw std::invalid_argument("PLFunction breakpoints must lie in [0,1)");
        }
        if (i > 0 && !(b > breakpoints_[i - 1])) {
            throw std::invalid_argument("PLFunction breakpoints must be strictly increasing");
        }
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("PLFunction values must be finite");
        }
    }
    if (breakpoints_.size() > 1) {
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            const Segment s = segment(breakpoints_, values_, i);
            lipschitz_ = std::max(lipschitz_, std::abs(s.v_right - s.v_left) / (s.right - s.left));
        }
    }
}

PLFunction PLFunction::constant(double c) { return PLFunction({0.0}, {c}); }

PLFunction PLFunction::tent(double start, double width, double height)
{
    if (!(width > 0.0) || width >= 1.0) {
        throw std::invalid_argument("tent width must lie in (0,1)");
    }
    std::vector<double> xs = {wrap_unit(start), wrap_unit(start + 0.5 * width), wrap_unit(start + width)};
    std::vector<double> vs = {0.0, height, 0.0};
    std::vector<std::size_t> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> sx;
    std::vector<double> sv;
    for (std::size_t k : order) {
        sx.push_back(xs[k]);
        sv.push_back(vs[k]);
    }
    coalesce(sx, sv);
    return PLFunction(std::move(sx), std::move(sv));
}

double PLFunction::operator()(double x) const
{
    const double t = wrap_unit(x);
    const std::size_t n = breakpoints_.size();
    if (n == 1) {
        return values_[0];
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    Segment s{};
    double pos = t;
    if (it == breakpoints_.begin()) {
        s = segment(breakpoints_, values_, n - 1);
        pos = t + 1.0;
    } else {
        s = segment(breakpoints_, values_, static_cast<std::size_t>(it - breakpoints_.begin()) - 1);
    }
    const double lambda = (pos - s.left) / (s.right - s.left);
    return s.v_left + lambda * (s.v_right - s.v_left);
}

double PLFunction::sup_norm() const
{
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double PLFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double PLFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

ParsedReal parse_real(const std::string& text)
{
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw std::invalid_argument("cannot parse real number '" + text + "'");
    }
    // Round-to-nearest parsing is off by at most half an ulp.
    const double ulp = std::nextafter(std::abs(v), std::numeric_limits<double>::infinity()) - std::abs(v);
    return {v, 0.5 * ulp, text};
}

double eval(const PLFunction& f, double x) { return f(x); }

PLFunction rotate(const PLFunction& f, double t)
{
    const std::size_t n = f.size();
    std::vector<std::size_t> order(n);
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) {
        shifted[i] = wrap_unit(f.breakpoints()[i] + t);
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return shifted[a] < shifted[b]; });
    std::vector<double> xs;
    std::vector<double> vs;
    xs.reserve(n);
    vs.reserve(n);
    for (std::size_t k : order) {
        xs.push_back(shifted[k]);
        vs.push_back(f.values()[k]);
    }
    coalesce(xs, vs);
    return PLFunction(std::move(xs), std::move(vs));
}

std::vector<double> merged_breakpoints(std::span<const PLFunction> fs)
{
    std::vector<double> xs;
    for (const auto& f : fs) {
        xs.insert(xs.end(), f.breakpoints().begin(), f.breakpoints().end());
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> dummy(xs.size(), 0.0);
    coalesce(xs, dummy);
    return xs;
}

PLFunction linear_combine(std::span<const double> coeffs, std::span<const PLFunction> fs)
{
    if (coeffs.empty() || coeffs.size() != fs.size()) {
        throw std::invalid_argument("linear_combine needs equal-length nonempty lists");
    }
    std::vector<double> xs = merged_breakpoints(fs);
    std::vector<double> vs(xs.size(), 0.0);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (coeffs[i] == 0.0) {
            continue;
        }
        for (std::size_t k = 0; k < xs.size(); ++k) {
            vs[k] += coeffs[i] * fs[i](xs[k]);
        }
    }
    return PLFunction(std::move(xs), std::move(vs));
}

double product_sup_norm(const PLFunction& f, const PLFunction& g)
{
    const PLFunction pair[] = {f, g};
    const std::vector<double> xs = merged_breakpoints(pair);
    std::vector<double> fv(xs.size());
    std::vector<double> gv(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        fv[k] = f(xs[k]);
        gv[k] = g(xs[k]);
    }
    double best = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const Segment sf = segment(xs, fv, k);
        const Segment sg = segment(xs, gv, k);
        // On the segment, with s in [0,1]: (a0 + a1 s)(b0 + b1 s).
        const double a0 = sf.v_left;
        const double a1 = sf.v_right - sf.v_left;
        const double b0 = sg.v_left;
        const double b1 = sg.v_right - sg.v_left;
        best = std::max(best, std::abs(a0 * b0));
        best = std::max(best, std::abs((a0 + a1) * (b0 + b1)));
        const double curvature = a1 * b1;
        if (curvature != 0.0) {
            const double s = -(a0 * b1 + a1 * b0) / (2.0 * curvature);
            if (s > 0.0 && s < 1.0) {
                best = std::max(best, std::abs((a0 + a1 * s) * (b0 + b1 * s)));
            }
        }
    }
    return best;
}

double sup_distance(const PLFunction& f, const PLFunction& g)
{
    const double coeffs[] = {1.0, -1.0};
    const PLFunction pair[] = {f, g};
    return linear_combine(coeffs, pair).sup_norm();
}

CertifiedBound certified_sup_distance(const PLFunction& f, const PLFunction& g, double step)
{
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("certified_sup_distance needs a positive step");
    }
    // Grid spacing 1/count <= step, so every point is within step/2 of a sample.
    const double raw = std::ceil(1.0 / step);
    if (raw > 1e9) {
        throw std::invalid_argument("certified_sup_distance step too small");
    }
    const auto count = static_cast<std::size_t>(std::max(1.0, raw));
    double estimate = 0.0;
    Sweep sf(f);
    Sweep sg(g);
    for (std::size_t k = 0; k < count; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(count);
        estimate = std::max(estimate, std::abs(sf.at(x) - sg.at(x)));
    }
    const double slack = (f.lipschitz() + g.lipschitz()) * step / 2.0;
    return {estimate, slack, estimate + slack};
}

}  // namespace rokhlin
