#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schouten/rational.hpp"

namespace schouten {

/// Univariate polynomial over Q, coefficients stored constant term first, no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    /// (t - root)
    static Polynomial linear_root(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational operator[](int k) const { return k < 0 || k >= static_cast<int>(c_.size()) ? Rational(0) : c_[static_cast<std::size_t>(k)]; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(out));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = a[static_cast<int>(k)] - b[static_cast<int>(k)];
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Quotient and remainder of Euclidean division by a nonzero divisor.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den)
    {
        if (den.is_zero())
            throw std::domain_error("polynomial division by zero");
        std::vector<Rational> rem = num.c_;
        if (num.degree() < den.degree())
            return {Polynomial(), num};
        std::vector<Rational> quot(static_cast<std::size_t>(num.degree() - den.degree() + 1));
        for (int k = num.degree(); k >= den.degree(); --k) {
            const Rational q = rem[static_cast<std::size_t>(k)] / den.leading();
            quot[static_cast<std::size_t>(k - den.degree())] = q;
            if (q == 0)
                continue;
            for (int j = 0; j <= den.degree(); ++j)
                rem[static_cast<std::size_t>(k - den.degree() + j)] -= q * den.c_[static_cast<std::size_t>(j)];
        }
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    /// (p(t) - p(0)) / t
    Polynomial drop_constant_over_t() const
    {
        if (c_.size() <= 1)
            return {};
        return Polynomial(std::vector<Rational>(c_.begin() + 1, c_.end()));
    }

    std::string to_string(const std::string& var = "t") const
    {
        if (c_.empty())
            return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rational& v = c_[static_cast<std::size_t>(k)];
            if (v == 0)
                continue;
            if (!out.empty())
                out += v < 0 ? " - " : " + ";
            else if (v < 0)
                out += "-";
            const Rational mag = abs(v);
            if (k == 0 || mag != 1)
                out += mag.get_str();
            if (k > 0)
                out += (k == 1 ? var : var + "^" + std::to_string(k));
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

}  // namespace schouten
