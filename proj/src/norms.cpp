#include "specflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specflow {

NormSpec NormSpec::schatten(double p) {
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument("NormSpec: p must be >= 1, got " + std::to_string(p));
    return NormSpec(Kind::SchattenP, p, 1);
}

NormSpec NormSpec::ky_fan(int k) {
    if (k < 1) throw std::invalid_argument("NormSpec: Ky Fan k must be >= 1");
    return NormSpec(Kind::KyFan, 0.0, k);
}

bool NormSpec::is_infinite_p() const {
    return kind_ == Kind::SchattenP && std::isinf(p_);
}

std::string NormSpec::token() const {
    if (kind_ == Kind::KyFan) return "kyfan" + std::to_string(k_);
    if (std::isinf(p_)) return "pinf";
    if (p_ == static_cast<long long>(p_))
        return "p" + std::to_string(static_cast<long long>(p_));
    std::string s = std::to_string(p_);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return "p" + s;
}

NormSpec NormSpec::parse(const std::string& token) {
    if (token.rfind("kyfan", 0) == 0) {
        const std::string tail = token.substr(5);
        if (tail.empty()) throw std::invalid_argument("NormSpec: bad token '" + token + "'");
        return ky_fan(std::stoi(tail));
    }
    if (token.rfind("p", 0) == 0) {
        const std::string tail = token.substr(1);
        if (tail == "inf") return schatten_inf();
        if (tail.empty()) throw std::invalid_argument("NormSpec: bad token '" + token + "'");
        return schatten(std::stod(tail));
    }
    throw std::invalid_argument("NormSpec: bad token '" + token + "'");
}

std::vector<double> rearrange_desc(std::span<const double> seq) {
    std::vector<double> out(seq.begin(), seq.end());
    for (double x : out)
        if (x < 0.0) throw std::invalid_argument("rearrange_desc: negative entry");
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

double eval_norm(const NormSpec& spec, std::span<const double> seq) {
    std::vector<double> mags(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) mags[i] = std::abs(seq[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    if (spec.kind() == NormSpec::Kind::KyFan) {
        const std::size_t k = std::min<std::size_t>(spec.k(), mags.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) sum += mags[i];
        return sum;
    }

    if (mags.empty()) return 0.0;
    const double p = spec.p();
    if (std::isinf(p)) return mags.front();
    if (p == 1.0) {
        double sum = 0.0;
        for (double x : mags) sum += x;
        return sum;
    }
    if (p == 2.0) {
        double sum = 0.0;
        for (double x : mags) sum += x * x;
        return std::sqrt(sum);
    }
    double sum = 0.0;
    for (double x : mags) sum += std::pow(x, p);
    return std::pow(sum, 1.0 / p);
}

bool weakly_majorizes(std::span<const double> eta, std::span<const double> xi) {
    std::vector<double> e = rearrange_desc(eta);
    std::vector<double> x = rearrange_desc(xi);
    const std::size_t n = std::max(e.size(), x.size());
    e.resize(n, 0.0);
    x.resize(n, 0.0);
    double se = 0.0, sx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        se += e[k];
        sx += x[k];
        if (sx > se + 1e-15 * std::max(1.0, se)) return false;
    }
    return true;
}

}  // namespace specflow
