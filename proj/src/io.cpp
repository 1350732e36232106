#include "hr1/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hr1 {

namespace {

struct Token {
    enum Kind { Num, Ident, LBracket, RBracket, Comma, Star, Caret, Plus, Minus, Slash, End } kind;
    std::string text;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}
    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::End, ""};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {Token::Num, s_.substr(start, pos_ - start)};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::Ident, s_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
            case '[': return {Token::LBracket, "["};
            case ']': return {Token::RBracket, "]"};
            case ',': return {Token::Comma, ","};
            case '*': return {Token::Star, "*"};
            case '^': return {Token::Caret, "^"};
            case '+': return {Token::Plus, "+"};
            case '-': return {Token::Minus, "-"};
            case '/': return {Token::Slash, "/"};
            default: throw std::invalid_argument(std::string("unexpected character '") + c + "' in expression");
        }
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;
};

class ExprParser {
  public:
    explicit ExprParser(const std::string& s) : lex_(s) { advance(); }

    Coeff parse() {
        Coeff out = parse_term();
        while (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            bool minus = tok_.kind == Token::Minus;
            advance();
            Coeff t = parse_term();
            out += minus ? -t : t;
        }
        if (tok_.kind != Token::End) throw std::invalid_argument("trailing input in expression");
        return out;
    }

  private:
    void advance() { tok_ = lex_.next(); }

    long parse_integer() {
        bool neg = false;
        if (tok_.kind == Token::Minus) {
            neg = true;
            advance();
        }
        if (tok_.kind != Token::Num) throw std::invalid_argument("expected integer");
        long v = std::stol(tok_.text);
        advance();
        return neg ? -v : v;
    }

    Rational parse_rational_after_sign(bool neg) {
        if (tok_.kind != Token::Num) throw std::invalid_argument("expected number");
        Rational num(mpz_class(tok_.text));
        advance();
        if (tok_.kind == Token::Slash) {
            advance();
            if (tok_.kind != Token::Num) throw std::invalid_argument("expected denominator");
            Rational den{mpz_class(tok_.text)};
            advance();
            if (den == 0) throw std::invalid_argument("zero denominator");
            num /= den;
        }
        return neg ? -num : num;
    }

    Coeff parse_factor() {
        if (tok_.kind != Token::Ident) throw std::invalid_argument("expected parameter name");
        std::string name = tok_.text;
        advance();
        if (tok_.kind == Token::LBracket) {
            name += '[';
            advance();
            name += std::to_string(parse_integer());
            while (tok_.kind == Token::Comma) {
                advance();
                name += ',' + std::to_string(parse_integer());
            }
            if (tok_.kind != Token::RBracket) throw std::invalid_argument("expected ']' in parameter name");
            name += ']';
            advance();
        }
        int e = 1;
        if (tok_.kind == Token::Caret) {
            advance();
            e = static_cast<int>(parse_integer());
        }
        return Coeff::from_symbol(sym(name), e);
    }

    Coeff parse_term() {
        bool neg = false;
        while (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            if (tok_.kind == Token::Minus) neg = !neg;
            advance();
        }
        Coeff acc;
        bool have_value = false;
        if (tok_.kind == Token::Num) {
            acc = Coeff(parse_rational_after_sign(neg));
            have_value = true;
        } else {
            acc = Coeff(neg ? Rational(-1) : Rational(1));
        }
        while (true) {
            if (have_value && tok_.kind != Token::Star) break;
            if (have_value) advance(); // consume '*'
            if (tok_.kind != Token::Ident) {
                if (!have_value) throw std::invalid_argument("expected parameter or number");
                throw std::invalid_argument("expected parameter after '*'");
            }
            acc *= parse_factor();
            have_value = true;
        }
        return acc;
    }

    Lexer lex_;
    Token tok_;
};

} // namespace

Coeff parse_coeff(const std::string& text) { return ExprParser(text).parse(); }

std::string coeff_to_expr(const Coeff& c) {
    if (c.is_zero()) return "0";
    // Deterministic: terms sorted by (name, exponent) sequences.
    struct Item {
        std::vector<std::pair<std::string, int32_t>> key;
        std::string text;
    };
    std::vector<Item> items;
    for (auto& [m, r] : c.terms()) {
        Item it;
        std::string s = rat_to_string(r);
        std::vector<std::pair<std::string, int32_t>> named;
        for (auto& [id, e] : m.f) named.emplace_back(ParameterSymbol::name_of(id), e);
        std::sort(named.begin(), named.end());
        for (auto& [nm, e] : named) {
            s += "*" + nm;
            if (e != 1) s += "^" + std::to_string(e);
        }
        it.key = named;
        it.text = s;
        items.push_back(std::move(it));
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.key < b.key; });
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += " + ";
        out += items[i].text;
    }
    return out;
}

HypersurfaceSpec HypersurfaceSpec::from_series(const Series& s, std::map<std::string, std::string> meta) {
    HypersurfaceSpec spec;
    spec.dimension = s.nvars();
    spec.truncation_order = s.trunc();
    spec.metadata = std::move(meta);
    bool symbolic = false;
    for (auto* t : s.display_order()) {
        spec.coefficients.emplace_back(mono::unpack(t->first, s.nvars()), t->second);
        if (!t->second.is_rational()) symbolic = true;
    }
    spec.mode = symbolic ? "symbolic" : "numeric";
    return spec;
}

Series HypersurfaceSpec::to_series() const {
    return make_series(dimension, truncation_order, coefficients);
}

IndependentJetData HypersurfaceSpec::to_independent_data() const {
    IndependentJetData d;
    d.dimension = dimension;
    d.truncation = truncation_order;
    for (auto& [e, v] : coefficients) d.set(e, v);
    return d;
}

std::string serialize_spec(const HypersurfaceSpec& spec) {
    nlohmann::ordered_json j;
    j["dimension"] = spec.dimension;
    j["truncation_order"] = spec.truncation_order;
    j["mode"] = spec.mode;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (auto& [e, v] : spec.coefficients) {
        nlohmann::ordered_json item;
        item["exponents"] = e;
        item["value"] = spec.mode == "numeric" && v.is_rational() ? rat_to_string(v.rational_value())
                                                                  : coeff_to_expr(v);
        coeffs.push_back(item);
    }
    j["coefficients"] = std::move(coeffs);
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (auto& [k, v] : spec.metadata) meta[k] = v;
    j["metadata"] = std::move(meta);
    return j.dump(2) + "\n";
}

HypersurfaceSpec parse_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed hypersurface spec: ") + e.what());
    }
    HypersurfaceSpec spec;
    auto need = [&](const char* field) {
        if (!j.contains(field))
            throw std::invalid_argument(std::string("hypersurface spec misses field '") + field + "'");
    };
    need("dimension");
    need("truncation_order");
    need("coefficients");
    spec.dimension = j["dimension"].get<int>();
    spec.truncation_order = j["truncation_order"].get<int>();
    spec.mode = j.value("mode", std::string("numeric"));
    if (spec.mode != "numeric" && spec.mode != "symbolic")
        throw std::invalid_argument("hypersurface spec: mode must be 'numeric' or 'symbolic'");
    size_t line = 0;
    for (auto& item : j["coefficients"]) {
        ++line;
        if (!item.contains("exponents") || !item.contains("value"))
            throw std::invalid_argument("coefficient entry " + std::to_string(line) +
                                        " misses 'exponents' or 'value'");
        Expo e = item["exponents"].get<Expo>();
        std::string vs = item["value"].get<std::string>();
        Coeff v;
        try {
            v = parse_coeff(vs);
        } catch (const std::exception& ex) {
            throw std::invalid_argument("coefficient entry " + std::to_string(line) + ": " + ex.what());
        }
        spec.coefficients.emplace_back(std::move(e), std::move(v));
    }
    if (j.contains("metadata"))
        for (auto& [k, v] : j["metadata"].items()) spec.metadata[k] = v.get<std::string>();
    return spec;
}

} // namespace hr1
