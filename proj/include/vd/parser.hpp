#pragma once

/**
 * @file parser.hpp
 * @brief Recursive-descent parser for the function-expression language.
 *
 *   expr   := term (("+" | "-") term)*
 *   term   := factor ("*" factor)*
 *   factor := atom ("^" integer)?
 *   atom   := "z" | "const(" cnum ")" | "poly(" cnum ("," cnum)* ")" | "log1mz"
 *           | "pow1mz(" real ")" | "blaschke(" cnum ("," cnum)* ")"
 *           | "recip(" expr ")" | "(" expr ")"
 *   cnum   := real | real "+" real "i" | real "-" real "i"
 *
 * A negative exponent is read as the reciprocal of the positive power.
 */

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "handle.hpp"
#include "quotient.hpp"

namespace vd {

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    AnalyticHandle parse() {
        auto h = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return h;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    bool keyword(std::string_view kw) {
        skip();
        if (s_.substr(pos_, kw.size()) != kw)
            return false;
        const std::size_t end = pos_ + kw.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
            return false;
        pos_ = end;
        return true;
    }

    bool try_real(double& out) {
        skip();
        std::size_t p = pos_;
        bool neg = false;
        if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) {
            neg = s_[p] == '-';
            ++p;
        }
        if (p >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[p])) || s_[p] == '.'))
            return false;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + p, s_.data() + s_.size(), v);
        if (ec != std::errc{})
            return false;
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        out = neg ? -v : v;
        return true;
    }

    double real() {
        double v = 0.0;
        if (!try_real(v))
            fail("expected a real number");
        return v;
    }

    cplx cnum() {
        const double re = real();
        const std::size_t save = pos_;
        skip();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            const bool neg = s_[pos_] == '-';
            ++pos_;
            skip();
            double im = 0.0;
            if (pos_ < s_.size() && s_[pos_] != '+' && s_[pos_] != '-' && try_real(im) && accept('i'))
                return {re, neg ? -im : im};
        }
        pos_ = save;
        return {re, 0.0};
    }

    std::vector<cplx> cnum_list() {
        std::vector<cplx> out{cnum()};
        while (accept(','))
            out.push_back(cnum());
        return out;
    }

    AnalyticHandle expr() {
        auto h = term();
        while (true) {
            if (accept('+'))
                h = sum(h, term());
            else if (accept('-'))
                h = difference(h, term());
            else
                return h;
        }
    }

    AnalyticHandle term() {
        auto h = factor();
        while (accept('*'))
            h = product(h, factor());
        return h;
    }

    AnalyticHandle factor() {
        auto h = atom();
        if (accept('^')) {
            skip();
            const std::size_t start = pos_;
            bool neg = false;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
                neg = s_[pos_++] == '-';
            int n = 0;
            auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), n);
            if (ec != std::errc{}) {
                pos_ = start;
                fail("expected an integer exponent");
            }
            pos_ = static_cast<std::size_t>(ptr - s_.data());
            if (n > 64)
                fail("exponent too large");
            h = power(h, n);
            if (neg)
                h = recip(h);
        }
        return h;
    }

    AnalyticHandle atom() {
        skip();
        const std::size_t start = pos_;
        if (keyword("z"))
            return identity_handle();
        if (keyword("log1mz"))
            return log1mz_handle();
        if (keyword("const")) {
            expect('(');
            const cplx c = cnum();
            expect(')');
            return constant_handle(c);
        }
        if (keyword("poly")) {
            expect('(');
            auto c = cnum_list();
            expect(')');
            return polynomial_handle(std::move(c));
        }
        if (keyword("pow1mz")) {
            expect('(');
            const double a = real();
            expect(')');
            if (!std::isfinite(a))
                throw Error(ErrorCode::ParameterOutOfRange, "pow1mz exponent must be finite");
            return pow1mz_handle(a);
        }
        if (keyword("blaschke")) {
            expect('(');
            auto zs = cnum_list();
            expect(')');
            for (const cplx& a : zs)
                if (!(std::abs(a) < 1.0))
                    throw Error(ErrorCode::ParameterOutOfRange,
                                "blaschke zero " + format_cnum(a) + " has modulus >= 1 (position " +
                                    std::to_string(start) + ")");
            return blaschke_handle(zs);
        }
        if (keyword("recip")) {
            expect('(');
            auto h = expr();
            expect(')');
            return recip(h);
        }
        if (accept('(')) {
            auto h = expr();
            expect(')');
            return h;
        }
        fail("expected an atom");
    }
};

} // namespace detail

inline AnalyticHandle parse_function_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

} // namespace vd
