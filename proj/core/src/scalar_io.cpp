#include "semilin/scalar_io.hpp"

#include <cctype>

namespace semilin {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ComplexAlgebraic parse() {
        ComplexAlgebraic v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("scalar '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool keyword(const char* kw) {
        skip();
        size_t n = std::char_traits<char>::length(kw);
        if (s_.compare(pos_, n, kw) != 0) return false;
        if (pos_ + n < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + n]))) return false;
        pos_ += n;
        return true;
    }

    ComplexAlgebraic expr() {
        ComplexAlgebraic v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    ComplexAlgebraic term() {
        ComplexAlgebraic v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                ComplexAlgebraic d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    ComplexAlgebraic unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return primary();
    }

    Rat number() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string ip = s_.substr(start, pos_ - start);
        std::string fp;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            fp = s_.substr(fs, pos_ - fs);
        }
        if (ip.empty() && fp.empty()) fail("expected number");
        Int num(ip.empty() ? "0" : ip);
        Int den = 1;
        for (char c : fp) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    Rat signed_rational() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (!eat('+'))
                break;
        }
        Rat r = number();
        if (eat('/')) {
            Rat d = number();
            if (sgn(d) == 0) fail("division by zero");
            r /= d;
        }
        return neg ? Rat(-r) : r;
    }

    ComplexAlgebraic primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            ComplexAlgebraic v = expr();
            expect(')');
            return v;
        }
        if (keyword("sqrt")) {
            expect('(');
            ComplexAlgebraic v = expr();
            expect(')');
            if (!v.is_real() || v.re.sign() < 0) fail("sqrt of a non-real or negative value");
            return ComplexAlgebraic(sqrt(v.re));
        }
        if (keyword("root")) {
            expect('(');
            std::vector<Rat> cs;
            cs.push_back(signed_rational());
            while (eat(',')) cs.push_back(signed_rational());
            expect(';');
            Rat j = number();
            expect(')');
            Poly p(cs);
            if (p.degree() < 1) fail("root of a constant polynomial");
            if (j.get_den() != 1) fail("root index must be an integer");
            auto rs = roots_of(p);
            if (j >= Rat(static_cast<long>(rs.size()))) fail("root index out of range");
            return rs[j.get_num().get_ui()].value;
        }
        if (keyword("i")) return ComplexAlgebraic::I();
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ComplexAlgebraic(RealAlgebraic(number()));
        fail("unexpected character");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

std::string rat_str(const Rat& r) { return r.get_str(); }

// true if s has a top-level + or - after its first character
bool compound(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && i > 0 && (c == '+' || c == '-')) return true;
    }
    return false;
}

std::string times_sqrt(const Rat& b, const Int& D) {
    std::string rad = "sqrt(" + D.get_str() + ")";
    if (b == 1) return rad;
    return rat_str(b) + "*" + rad;
}

}  // namespace

ComplexAlgebraic parse_scalar(const std::string& s) { return Parser(s).parse(); }

RealAlgebraic parse_real(const std::string& s) {
    ComplexAlgebraic v = parse_scalar(s);
    if (!v.is_real()) throw ParseError("scalar '" + s + "' is not real");
    return v.re;
}

std::string to_string(const RealAlgebraic& v) {
    if (v.is_rational()) return rat_str(v.rational());
    Poly m = v.minimal_poly();
    if (m.degree() == 2) {
        Rat A = m.c[2], B = m.c[1], C = m.c[0];
        auto [s, D] = split_sqrt(Rat(B * B - 4 * A * C));
        Rat a = -B / (2 * A);
        Rat b = s / (2 * A);
        if (sgn(b) < 0) b = -b;
        if (v < RealAlgebraic(a)) b = -b;
        std::string out;
        if (sgn(a) != 0) out = rat_str(a);
        if (sgn(b) > 0) {
            if (!out.empty()) out += "+";
            out += times_sqrt(b, D);
        } else {
            out += "-" + times_sqrt(Rat(-b), D);
        }
        return out;
    }
    auto rs = roots_of(m);
    size_t idx = rs.size();
    Interval iv = v.interval(32);
    for (size_t k = 0; k < rs.size(); ++k) {
        const auto& z = rs[k].value;
        if (!z.is_real()) continue;
        Interval iz = z.re.interval(32);
        if (iz.hi < iv.lo || iv.hi < iz.lo) continue;
        if (z.re == v) {
            idx = k;
            break;
        }
    }
    if (idx == rs.size()) throw std::logic_error("to_string: root not located");
    std::string out = "root(";
    for (int i = 0; i <= m.degree(); ++i) {
        if (i) out += ",";
        out += rat_str(m.c[i]);
    }
    out += ";" + std::to_string(idx) + ")";
    return out;
}

std::string to_string(const ComplexAlgebraic& v) {
    if (v.is_real()) return to_string(v.re);
    bool neg = v.im.sign() < 0;
    std::string im = to_string(neg ? RealAlgebraic(-v.im) : v.im);
    std::string ipart;
    if (im == "1")
        ipart = "i";
    else if (compound(im))
        ipart = "(" + im + ")*i";
    else
        ipart = im + "*i";
    if (v.re.is_zero()) return (neg ? "-" : "") + ipart;
    return to_string(v.re) + (neg ? "-" : "+") + ipart;
}

std::string RealAlgebraic::str() const { return to_string(*this); }
std::string ComplexAlgebraic::str() const { return to_string(*this); }

}  // namespace semilin
