#include "fixfree/polyparse.hpp"

#include <cctype>

namespace fixfree {

namespace {

// Recursive descent over
//   sum     := ['+'|'-'] product (('+'|'-') product)*
//   product := power ('*' power)*
//   power   := atom ('^' integer)?
//   atom    := integer | 't' | '(' sum ')' | '-' atom
class Parser {
public:
    Parser(const std::string& s, unsigned long max_exp) : s_(s), max_exp_(max_exp) {}

    IntPoly run() {
        skip();
        if (peek() == '[') return list();
        IntPoly p = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    const std::string& s_;
    unsigned long max_exp_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Int integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) {
            pos_ = start;
            fail("expected an integer");
        }
        return Int(s_.substr(start, pos_ - start));
    }

    IntPoly list() {
        expect('[');
        std::vector<Int> c;
        if (!accept(']')) {
            do {
                bool neg = false;
                if (accept('-')) neg = true;
                else accept('+');
                Int v = integer();
                c.push_back(neg ? Int(-v) : v);
            } while (accept(','));
            expect(']');
        }
        if (peek() != '\0') fail("trailing text after coefficient list");
        return IntPoly(std::move(c));
    }

    IntPoly sum() {
        IntPoly acc;
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        acc = product();
        if (neg) acc = -acc;
        while (true) {
            if (accept('+')) acc = acc + product();
            else if (accept('-')) acc = acc - product();
            else return acc;
        }
    }

    IntPoly product() {
        IntPoly acc = power();
        while (accept('*')) acc = acc * power();
        return acc;
    }

    IntPoly power() {
        IntPoly base = atom();
        if (!accept('^')) return base;
        const std::size_t at = pos_;
        Int e = integer();
        if (e > max_exp_) {
            pos_ = at;
            fail("exponent exceeds " + std::to_string(max_exp_));
        }
        IntPoly out{1};
        for (unsigned long k = e.get_ui(); k > 0; k >>= 1) {
            if (k & 1) out = out * base;
            if (k > 1) base = base * base;
        }
        return out;
    }

    IntPoly atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            IntPoly p = sum();
            expect(')');
            return p;
        }
        if (c == 't') {
            ++pos_;
            return IntPoly{0, 1};
        }
        if (c == '-') {
            ++pos_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly(std::vector<Int>{integer()});
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

}  // namespace

IntPoly parse_polynomial(const std::string& text, unsigned long max_exponent) {
    return Parser(text, max_exponent).run();
}

}  // namespace fixfree
