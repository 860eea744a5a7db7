#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace specflow {

// A symmetric norm on finite real sequences: permutation- and sign-invariant,
// normalized so that the norm of (1,0,0,...) is 1. Two families are supported:
// the l_p norms for p in [1,inf] and the Ky Fan k-norms (sum of the k largest
// absolute values).
class NormSpec {
public:
    enum class Kind { SchattenP, KyFan };

    static NormSpec schatten(double p);
    static NormSpec ky_fan(int k);
    static NormSpec schatten_inf() { return schatten(std::numeric_limits<double>::infinity()); }

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    int k() const { return k_; }
    bool is_schatten() const { return kind_ == Kind::SchattenP; }
    bool is_infinite_p() const;

    // Token form used in files and on the CLI: "p1", "p2", "pinf", "p1.5", "kyfan3".
    std::string token() const;
    static NormSpec parse(const std::string& token);

private:
    NormSpec(Kind kind, double p, int k) : kind_(kind), p_(p), k_(k) {}
    Kind kind_;
    double p_ = 2.0;
    int k_ = 1;
};

// Norm of |seq| padded with zeros. The sequence is canonicalized (absolute
// values, sorted descending) before summation, so permutation invariance is
// bit-exact.
double eval_norm(const NormSpec& spec, std::span<const double> seq);

// Non-increasing rearrangement of a nonnegative sequence.
std::vector<double> rearrange_desc(std::span<const double> seq);

// True iff xi is weakly majorized by eta: every k-prefix sum of the descending
// rearrangement of xi is bounded by eta's. Shorter input is zero-padded.
bool weakly_majorizes(std::span<const double> eta, std::span<const double> xi);

}  // namespace specflow
