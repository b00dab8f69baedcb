#include "onofri/profile.hpp"

#include "onofri/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace onofri {

class ProfileImpl {
public:
    virtual ~ProfileImpl() = default;
    virtual double value(double r) const = 0;
    virtual double slope(double r) const = 0;
    virtual std::optional<FlatTail> flat_tail() const = 0;
    virtual const std::vector<double>& kinks() const = 0;
    virtual bool is_sampled() const { return false; }
};

namespace {

void require_radius(double r) {
    if (!(r >= 0.0)) throw std::domain_error("Profile: radius must be >= 0");
}

const std::vector<double> kNoKinks;

std::vector<double> merged(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

class ConstantImpl final : public ProfileImpl {
public:
    explicit ConstantImpl(double c) : c_(c) {}
    double value(double r) const override {
        require_radius(r);
        return c_;
    }
    double slope(double r) const override {
        require_radius(r);
        return 0.0;
    }
    std::optional<FlatTail> flat_tail() const override { return FlatTail{0.0, c_}; }
    const std::vector<double>& kinks() const override { return kNoKinks; }

private:
    double c_;
};

class SampledImpl final : public ProfileImpl {
public:
    SampledImpl(std::vector<double> nodes, std::vector<double> values, Tail tail)
        : nodes_(std::move(nodes)), values_(std::move(values)), tail_(tail) {
        if (nodes_.size() < 2) throw std::invalid_argument("sampled_profile: need at least 2 nodes");
        if (nodes_.size() != values_.size())
            throw std::invalid_argument("sampled_profile: nodes/values size mismatch");
        if (nodes_.front() != 0.0)
            throw std::invalid_argument("sampled_profile: first node must be 0");
        for (size_t i = 0; i + 1 < nodes_.size(); ++i)
            if (!(nodes_[i] < nodes_[i + 1]))
                throw std::invalid_argument("sampled_profile: nodes must be strictly increasing");
    }

    double value(double r) const override {
        require_radius(r);
        if (r >= nodes_.back()) return tail_ == Tail::zero ? 0.0 : values_.back();
        const size_t i = segment(r);
        const double t = (r - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
        return values_[i] + t * (values_[i + 1] - values_[i]);
    }

    double slope(double r) const override {
        require_radius(r);
        if (r >= nodes_.back()) return 0.0;
        const size_t i = segment(r);
        return (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
    }

    std::optional<FlatTail> flat_tail() const override {
        return FlatTail{nodes_.back(), tail_ == Tail::zero ? 0.0 : values_.back()};
    }
    const std::vector<double>& kinks() const override { return nodes_; }
    bool is_sampled() const override { return true; }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }
    Tail tail() const { return tail_; }

private:
    size_t segment(double r) const {
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
        const size_t idx = static_cast<size_t>(it - nodes_.begin());
        return idx == 0 ? 0 : idx - 1;
    }

    std::vector<double> nodes_;
    std::vector<double> values_;
    Tail tail_;
};

class SumImpl final : public ProfileImpl {
public:
    SumImpl(Profile a, Profile b)
        : a_(std::move(a)), b_(std::move(b)), kinks_(merged(a_.kinks(), b_.kinks())) {}
    double value(double r) const override { return a_.value(r) + b_.value(r); }
    double slope(double r) const override { return a_.slope(r) + b_.slope(r); }
    std::optional<FlatTail> flat_tail() const override {
        const auto ta = a_.flat_tail();
        const auto tb = b_.flat_tail();
        if (!ta || !tb) return std::nullopt;
        return FlatTail{std::max(ta->start, tb->start), ta->value + tb->value};
    }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    Profile a_, b_;
    std::vector<double> kinks_;
};

class ScaleImpl final : public ProfileImpl {
public:
    ScaleImpl(Profile u, double c) : u_(std::move(u)), c_(c) {}
    double value(double r) const override { return c_ * u_.value(r); }
    double slope(double r) const override { return c_ * u_.slope(r); }
    std::optional<FlatTail> flat_tail() const override {
        const auto t = u_.flat_tail();
        if (!t) return std::nullopt;
        return FlatTail{t->start, c_ * t->value};
    }
    const std::vector<double>& kinks() const override { return u_.kinks(); }

private:
    Profile u_;
    double c_;
};

class ProductImpl final : public ProfileImpl {
public:
    ProductImpl(Profile a, Profile b)
        : a_(std::move(a)), b_(std::move(b)), kinks_(merged(a_.kinks(), b_.kinks())) {}
    double value(double r) const override { return a_.value(r) * b_.value(r); }
    double slope(double r) const override {
        return a_.slope(r) * b_.value(r) + a_.value(r) * b_.slope(r);
    }
    std::optional<FlatTail> flat_tail() const override {
        const auto ta = a_.flat_tail();
        const auto tb = b_.flat_tail();
        if (ta && tb) return FlatTail{std::max(ta->start, tb->start), ta->value * tb->value};
        // A vanishing factor kills the product past its support.
        if (ta && ta->value == 0.0) return ta;
        if (tb && tb->value == 0.0) return tb;
        return std::nullopt;
    }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    Profile a_, b_;
    std::vector<double> kinks_;
};

class AnalyticImpl final : public ProfileImpl {
public:
    AnalyticImpl(std::function<double(double)> value, std::function<double(double)> slope,
                 std::vector<double> kinks, std::optional<FlatTail> tail)
        : value_(std::move(value)), slope_(std::move(slope)), kinks_(std::move(kinks)),
          tail_(tail) {
        std::sort(kinks_.begin(), kinks_.end());
        kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
    }
    double value(double r) const override {
        require_radius(r);
        return value_(r);
    }
    double slope(double r) const override {
        require_radius(r);
        return slope_(r);
    }
    std::optional<FlatTail> flat_tail() const override { return tail_; }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    std::function<double(double)> value_;
    std::function<double(double)> slope_;
    std::vector<double> kinks_;
    std::optional<FlatTail> tail_;
};

double bump_phi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

class CutoffImpl final : public ProfileImpl {
public:
    explicit CutoffImpl(double scale) : scale_(scale), kinks_{0.5 * scale, scale} {
        if (!(scale > 0.0)) throw std::invalid_argument("cutoff_psi: scale must be > 0");
    }

    double value(double r) const override {
        require_radius(r);
        const double s = r / scale_;
        if (s <= 0.5) return 1.0;
        if (s >= 1.0) return 0.0;
        const double a = bump_phi(2.0 - 2.0 * s);
        const double b = bump_phi(2.0 * s - 1.0);
        return a / (a + b);
    }

    double slope(double r) const override {
        require_radius(r);
        const double s = r / scale_;
        if (s <= 0.5 || s >= 1.0) return 0.0;
        const double a = bump_phi(2.0 - 2.0 * s);
        const double b = bump_phi(2.0 * s - 1.0);
        const double da = -2.0 * a / ((2.0 - 2.0 * s) * (2.0 - 2.0 * s));
        const double db = 2.0 * b / ((2.0 * s - 1.0) * (2.0 * s - 1.0));
        return (da * b - a * db) / ((a + b) * (a + b)) / scale_;
    }

    std::optional<FlatTail> flat_tail() const override { return FlatTail{scale_, 0.0}; }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    double scale_;
    std::vector<double> kinks_;
};

class EtaImpl final : public ProfileImpl {
public:
    EtaImpl(int k, double k_star) : k_(k), k_star_(k_star), kinks_{1.0, k_star} {}

    double value(double r) const override {
        require_radius(r);
        const double root = std::pow(static_cast<double>(k_), -1.0 / k_);
        if (r <= 1.0) return root;
        if (r > k_star_) return 0.0;
        return std::pow(r, -1.0 / k_) + root - 1.0;
    }

    double slope(double r) const override {
        require_radius(r);
        if (r <= 1.0 || r > k_star_) return 0.0;
        return -(1.0 / k_) * std::pow(r, -1.0 / k_ - 1.0);
    }

    std::optional<FlatTail> flat_tail() const override { return FlatTail{k_star_, 0.0}; }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    int k_;
    double k_star_;
    std::vector<double> kinks_;
};

class TruncateImpl final : public ProfileImpl {
public:
    TruncateImpl(Profile u, double lambda, std::vector<double> kinks)
        : u_(std::move(u)), lambda_(lambda), kinks_(std::move(kinks)) {}

    double value(double r) const override {
        return std::clamp(u_.value(r), -lambda_, lambda_);
    }
    double slope(double r) const override {
        const double v = u_.value(r);
        return (v > -lambda_ && v < lambda_) ? u_.slope(r) : 0.0;
    }
    std::optional<FlatTail> flat_tail() const override {
        const auto t = u_.flat_tail();
        if (!t) return std::nullopt;
        return FlatTail{t->start, std::clamp(t->value, -lambda_, lambda_)};
    }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    Profile u_;
    double lambda_;
    std::vector<double> kinks_;
};

class LiftImpl final : public ProfileImpl {
public:
    LiftImpl(Profile u, double scale, const GeometryConstants& geom)
        : u_(std::move(u)), scale_(scale), dim_(geom.dim) {
        if (!(scale > 0.0)) throw std::invalid_argument("lift_to_space: scale must be > 0");
        if (std::fabs(u_.value(1.0)) > 1e-9)
            throw std::invalid_argument("lift_to_space: u(1) != 0");
        v_at_scale_ = v_potential(dim_, scale_);
        for (double k : u_.kinks()) {
            const double mapped = k * scale_;
            if (mapped < scale_) kinks_.push_back(mapped);
        }
        kinks_.push_back(scale_);
        std::sort(kinks_.begin(), kinks_.end());
        kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
    }

    double value(double r) const override {
        require_radius(r);
        if (r > scale_) return 0.0;
        return u_.value(r / scale_) - v_potential(dim_, r) + v_at_scale_;
    }
    double slope(double r) const override {
        require_radius(r);
        if (r > scale_) return 0.0;
        return u_.slope(r / scale_) / scale_ - v_potential_slope(dim_, r);
    }
    std::optional<FlatTail> flat_tail() const override { return FlatTail{scale_, 0.0}; }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    Profile u_;
    double scale_;
    Dimension dim_;
    double v_at_scale_;
    std::vector<double> kinks_;
};

class ProjectImpl final : public ProfileImpl {
public:
    ProjectImpl(Profile u, double scale, const GeometryConstants& geom)
        : u_(std::move(u)), psi_(cutoff_psi(1.0)), scale_(scale), dim_(geom.dim) {
        if (!(scale > 0.0)) throw std::invalid_argument("project_to_ball: scale must be > 0");
        v_at_scale_ = v_potential(dim_, scale_);
        for (double k : u_.kinks()) {
            const double mapped = k / scale_;
            if (mapped < 1.0 && mapped > 0.0) kinks_.push_back(mapped);
        }
        kinks_.push_back(0.5);
        kinks_.push_back(1.0);
        std::sort(kinks_.begin(), kinks_.end());
        kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
    }

    double value(double r) const override {
        require_radius(r);
        if (r >= 1.0) return 0.0;
        return u_.value(scale_ * r) * psi_.value(r) + v_potential(dim_, scale_ * r) - v_at_scale_;
    }
    double slope(double r) const override {
        require_radius(r);
        if (r >= 1.0) return 0.0;
        return scale_ * u_.slope(scale_ * r) * psi_.value(r) +
               u_.value(scale_ * r) * psi_.slope(r) +
               scale_ * v_potential_slope(dim_, scale_ * r);
    }
    std::optional<FlatTail> flat_tail() const override { return FlatTail{1.0, 0.0}; }
    const std::vector<double>& kinks() const override { return kinks_; }

private:
    Profile u_;
    Profile psi_;
    double scale_;
    Dimension dim_;
    double v_at_scale_;
    std::vector<double> kinks_;
};

}  // namespace

Profile::Profile() : impl_(std::make_shared<ConstantImpl>(0.0)) {}
Profile::Profile(std::shared_ptr<const ProfileImpl> impl) : impl_(std::move(impl)) {}

double Profile::value(double r) const { return impl_->value(r); }
double Profile::slope(double r) const { return impl_->slope(r); }
std::optional<FlatTail> Profile::flat_tail() const { return impl_->flat_tail(); }

std::optional<double> Profile::support_bound() const {
    const auto t = impl_->flat_tail();
    if (t && t->value == 0.0) return t->start;
    return std::nullopt;
}

const std::vector<double>& Profile::kinks() const { return impl_->kinks(); }
bool Profile::is_sampled() const { return impl_->is_sampled(); }

Profile Profile::scaled(double c) const { return Profile(std::make_shared<ScaleImpl>(*this, c)); }
Profile Profile::shifted(double c) const { return *this + constant(c); }
Profile Profile::times(const Profile& other) const {
    return Profile(std::make_shared<ProductImpl>(*this, other));
}

Profile operator+(const Profile& a, const Profile& b) {
    return Profile(std::make_shared<SumImpl>(a, b));
}
Profile operator-(const Profile& a, const Profile& b) {
    return Profile(std::make_shared<SumImpl>(a, b.scaled(-1.0)));
}

Profile Profile::zero() { return Profile(); }
Profile Profile::constant(double c) { return Profile(std::make_shared<ConstantImpl>(c)); }

Profile sampled_profile(std::vector<double> nodes, std::vector<double> values, Tail tail) {
    return Profile(std::make_shared<SampledImpl>(std::move(nodes), std::move(values), tail));
}

Profile analytic_profile(std::function<double(double)> value, std::function<double(double)> slope,
                         std::vector<double> kinks, std::optional<FlatTail> tail) {
    return Profile(std::make_shared<AnalyticImpl>(std::move(value), std::move(slope),
                                                  std::move(kinks), tail));
}

namespace {
const SampledImpl& as_sampled(const Profile& p) {
    const auto* s = dynamic_cast<const SampledImpl*>(&p.impl());
    if (!s) throw std::invalid_argument("profile is not sampled");
    return *s;
}
}  // namespace

std::span<const double> sampled_nodes(const Profile& p) { return as_sampled(p).nodes(); }
std::span<const double> sampled_values(const Profile& p) { return as_sampled(p).values(); }

std::vector<double> geometric_grid(double upper) {
    std::vector<double> grid{0.0};
    for (double r = 1e-4; r < upper; r *= 1.05) grid.push_back(r);
    grid.push_back(upper);
    return grid;
}

Profile cutoff_psi(double r_scale) { return Profile(std::make_shared<CutoffImpl>(r_scale)); }

Profile truncate(const Profile& u, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("truncate: lambda must be > 0");
    // Level crossings of |u| = lambda become kinks of the clamped profile;
    // located by bisection between sign changes on kinks + a geometric probe grid.
    const auto tail = u.flat_tail();
    const double upper = tail ? std::max(tail->start, 1.0) : 1e6;
    std::vector<double> probes = merged(u.kinks(), geometric_grid(upper));
    std::vector<double> kinks = u.kinks();
    for (double level : {lambda, -lambda}) {
        auto f = [&](double r) { return u.value(r) - level; };
        for (size_t i = 0; i + 1 < probes.size(); ++i) {
            double lo = probes[i], hi = probes[i + 1];
            double flo = f(lo);
            if (flo == 0.0) {
                kinks.push_back(lo);
                continue;
            }
            if (flo * f(hi) >= 0.0) continue;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
            }
            kinks.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
    return Profile(std::make_shared<TruncateImpl>(u, lambda, std::move(kinks)));
}

EtaResult eta_k(int k) {
    if (k < 2) throw std::invalid_argument("eta_k: k must be >= 2");
    const double root = std::pow(static_cast<double>(k), -1.0 / k);
    const double k_star = std::pow(1.0 - root, -static_cast<double>(k));
    return EtaResult{Profile(std::make_shared<EtaImpl>(k, k_star)), k_star};
}

Profile lift_to_space(const Profile& u, double scale, const GeometryConstants& geom) {
    return Profile(std::make_shared<LiftImpl>(u, scale, geom));
}

Profile project_to_ball(const Profile& u, double scale, const GeometryConstants& geom) {
    return Profile(std::make_shared<ProjectImpl>(u, scale, geom));
}

Profile minimizing_family(Dimension dim, double r) {
    return project_to_ball(Profile::zero(), r, constants(dim));
}

Profile counterexample_profile(int K) {
    if (K < 2) throw std::invalid_argument("counterexample_profile: K must be >= 2");
    std::vector<double> nodes{0.0, 1.5};
    std::vector<double> values{0.0, 0.0};
    for (int k = 2; k <= K; ++k) {
        const double h = 1.0 / (k * std::sqrt(std::log(static_cast<double>(k))));
        nodes.push_back(static_cast<double>(k));
        values.push_back(h);
        nodes.push_back(k + 0.5);
        values.push_back(0.0);
    }
    return sampled_profile(std::move(nodes), std::move(values), Tail::zero);
}

double max_abs_value(const Profile& p) {
    double best = 0.0;
    auto consider = [&](double r) { best = std::max(best, std::fabs(p.value(r))); };
    if (p.is_sampled()) {
        for (double v : sampled_values(p)) best = std::max(best, std::fabs(v));
    } else {
        const auto tail = p.flat_tail();
        const double upper = tail ? std::max(tail->start, 1.0) : 1e6;
        for (double r : geometric_grid(upper)) consider(r);
        for (double k : p.kinks()) consider(k);
    }
    const auto tail = p.flat_tail();
    if (tail) best = std::max(best, std::fabs(tail->value));
    return best;
}

void write_profile_csv(const Profile& p, std::ostream& out, std::span<const double> grid) {
    std::vector<double> nodes;
    if (p.is_sampled()) {
        const auto n = sampled_nodes(p);
        nodes.assign(n.begin(), n.end());
    } else if (!grid.empty()) {
        nodes.assign(grid.begin(), grid.end());
    } else {
        const auto tail = p.flat_tail();
        nodes = merged(p.kinks(), geometric_grid(tail ? std::max(tail->start, 1.0) : 100.0));
    }
    const auto tail = p.flat_tail();
    if (tail && tail->value != 0.0)
        out << "# tail=constant start=" << tail->start << " value=" << tail->value << "\n";
    out << "r,value,slope\n";
    out.precision(17);
    for (double r : nodes) out << r << "," << p.value(r) << "," << p.slope(r) << "\n";
}

Profile read_profile_csv(std::istream& in) {
    std::vector<double> nodes, values;
    Tail tail = Tail::zero;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("tail=constant") != std::string::npos) tail = Tail::constant;
            continue;
        }
        if (line.rfind("r,", 0) == 0) continue;  // header
        std::istringstream row(line);
        double r, v;
        char comma;
        if (!(row >> r >> comma >> v)) throw std::invalid_argument("profile CSV: bad row: " + line);
        nodes.push_back(r);
        values.push_back(v);
    }
    return sampled_profile(std::move(nodes), std::move(values), tail);
}

}  // namespace onofri
