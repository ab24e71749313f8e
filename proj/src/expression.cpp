#include "qsheaf/expression.hpp"

#include "qsheaf/error.hpp"

#include <cctype>

namespace qsheaf {

Polynomial divisor_polynomial(const ClassLattice& cl, std::size_t rho) {
    const std::size_t k = cl.pic_rank();
    Polynomial p(k);
    const IntVec& cls = cl.divisor_class(rho);
    for (std::size_t j = 0; j < k; ++j)
        if (cls[j] != 0) p += Polynomial::variable(k, j) * Rational(static_cast<long>(cls[j]));
    return p;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const ClassLattice& cl, bool allow_q) : text_(text), cl_(cl), allow_q_(allow_q) {}

    NovikovPolynomial parse() {
        skip();
        if (at_end()) fail("empty expression");
        NovikovPolynomial v = expr();
        skip();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return v;
    }

private:
    std::string_view text_;
    const ClassLattice& cl_;
    bool allow_q_;
    std::size_t pos_ = 0;

    std::size_t k() const { return cl_.pic_rank(); }
    std::size_t curve_rank() const { return cl_.pic_rank(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

    bool at_end() const { return pos_ >= text_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NovikovPolynomial constant(const Rational& c) const {
        return NovikovPolynomial::classical(Polynomial::constant(k(), c), curve_rank());
    }

    NovikovPolynomial expr() {
        NovikovPolynomial v = signed_term();
        for (;;) {
            if (accept('+'))
                v += signed_term();
            else if (accept('-'))
                v += -signed_term();
            else
                return v;
        }
    }

    NovikovPolynomial signed_term() {
        if (accept('-')) return -term();
        accept('+');
        return term();
    }

    NovikovPolynomial term() {
        NovikovPolynomial v = power();
        for (;;) {
            if (accept('*')) {
                v *= power();
            } else if (accept('/')) {
                skip();
                std::size_t at = pos_;
                Integer d = integer();
                if (d == 0) {
                    pos_ = at;
                    fail("division by zero");
                }
                v *= Rational(Integer(1), d);
            } else {
                return v;
            }
        }
    }

    NovikovPolynomial power() {
        NovikovPolynomial base = atom();
        if (accept('^')) {
            skip();
            std::size_t at = pos_;
            Integer e = integer();
            if (e > 1000) {
                pos_ = at;
                fail("exponent too large");
            }
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::size_t index_suffix(const char* what, std::size_t limit) {
        std::size_t at = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail(std::string("expected index after ") + what);
        Integer i = integer();
        if (i < 1 || i > static_cast<unsigned long>(limit)) {
            pos_ = at;
            fail(std::string(what) + " index out of range 1.." + std::to_string(limit));
        }
        return i.get_ui() - 1;
    }

    NovikovPolynomial atom() {
        skip();
        if (at_end()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NovikovPolynomial v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return constant(Rational(integer()));
        if (text_.substr(pos_, 3) == "psi") {
            pos_ += 3;
            std::size_t i = index_suffix("psi", k());
            return NovikovPolynomial::classical(Polynomial::variable(k(), i), curve_rank());
        }
        if (c == 'D') {
            ++pos_;
            std::size_t i = index_suffix("D", cl_.num_rays());
            return NovikovPolynomial::classical(divisor_polynomial(cl_, i), curve_rank());
        }
        if (c == 'q') {
            const std::size_t at = pos_;
            if (!allow_q_) fail("quantum parameter not allowed here");
            ++pos_;
            const auto& gens = cl_.mori_generators();
            std::size_t j = 0;
            if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                j = index_suffix("q", gens.size());
            } else if (gens.size() != 1) {
                pos_ = at;
                fail("bare 'q' needs a single Mori generator");
            }
            return NovikovPolynomial::q_power(gens[j].coords, k());
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

NovikovPolynomial parse_expression(std::string_view text, const ClassLattice& cl) {
    return Parser(text, cl, true).parse();
}

Polynomial parse_classical(std::string_view text, const ClassLattice& cl) {
    return Parser(text, cl, false).parse().classical_part();
}

}  // namespace qsheaf
