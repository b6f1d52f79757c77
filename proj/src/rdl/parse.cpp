#include "icdoc/rdl/parse.hpp"

#include <charconv>
#include <set>
#include <variant>

#include "icdoc/errors.hpp"

namespace icdoc::rdl {

std::string_view to_string(Access access) noexcept {
    switch (access) {
    case Access::r: return "r";
    case Access::w: return "w";
    case Access::rw: return "rw";
    case Access::na: return "na";
    }
    return "";
}

namespace {

enum class TokenKind { ident, integer, string, punct, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    std::uint64_t value = 0;
    std::size_t line = 0;
};

class Lexer {
public:
    Lexer(std::string_view src, std::size_t first_line) : src_(src), line_(first_line) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                tokens.push_back(Token{TokenKind::end, "", 0, line_});
                return tokens;
            }
            char c = src_[pos_];
            if (is_ident_start(c)) tokens.push_back(ident());
            else if (c >= '0' && c <= '9') tokens.push_back(number());
            else if (c == '"') tokens.push_back(string());
            else if (std::string_view("{}[];:=@").find(c) != std::string_view::npos) {
                tokens.push_back(Token{TokenKind::punct, std::string(1, c), 0, line_});
                ++pos_;
            } else {
                throw ParseError(line_, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    static bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
    static bool is_ident(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (src_.substr(pos_, 2) == "/*") {
                std::size_t start_line = line_;
                pos_ += 2;
                while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") {
                    if (src_[pos_] == '\n') ++line_;
                    ++pos_;
                }
                if (pos_ >= src_.size()) throw ParseError(start_line, "unterminated comment");
                pos_ += 2;
            } else {
                return;
            }
        }
    }

    Token ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident(src_[pos_])) ++pos_;
        return Token{TokenKind::ident, std::string(src_.substr(start, pos_ - start)), 0, line_};
    }

    Token number() {
        std::size_t start = pos_;
        int base = 10;
        if (src_.substr(pos_, 2) == "0x" || src_.substr(pos_, 2) == "0X") {
            base = 16;
            pos_ += 2;
        }
        std::size_t digits = pos_;
        while (pos_ < src_.size() && is_ident(src_[pos_])) ++pos_;
        auto text = src_.substr(start, pos_ - start);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + digits, src_.data() + pos_, value, base);
        if (digits == pos_ || ec != std::errc{} || ptr != src_.data() + pos_) {
            throw ParseError(line_, "invalid integer literal '" + std::string(text) + "'");
        }
        return Token{TokenKind::integer, std::string(text), value, line_};
    }

    Token string() {
        std::size_t start_line = line_;
        ++pos_;
        std::string out;
        while (pos_ < src_.size() && src_[pos_] != '"') {
            char c = src_[pos_];
            if (c == '\\' && pos_ + 1 < src_.size()) {
                out.push_back(src_[pos_ + 1]);
                pos_ += 2;
                continue;
            }
            if (c == '\n') ++line_;
            out.push_back(c);
            ++pos_;
        }
        if (pos_ >= src_.size()) throw ParseError(start_line, "unterminated string");
        ++pos_;
        return Token{TokenKind::string, std::move(out), 0, start_line};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

using PropValue = std::variant<bool, std::uint64_t, std::string>;

struct Property {
    std::string name;
    PropValue value;
    bool identifier = false;
    std::size_t line = 0;
};

enum class Scope { addrmap, reg, field };

std::string_view scope_name(Scope s) {
    switch (s) {
    case Scope::addrmap: return "addrmap";
    case Scope::reg: return "reg";
    case Scope::field: return "field";
    }
    return "";
}

bool allowed(Scope scope, std::string_view prop) {
    static const std::set<std::string_view> common{"name", "desc"};
    if (common.contains(prop)) return true;
    switch (scope) {
    case Scope::addrmap: return prop == "bigendian" || prop == "littleendian";
    case Scope::reg: return prop == "regwidth";
    case Scope::field: return prop == "sw" || prop == "hw" || prop == "reset" || prop == "update_rate";
    }
    return false;
}

bool known_property(std::string_view prop) {
    return allowed(Scope::addrmap, prop) || allowed(Scope::reg, prop) || allowed(Scope::field, prop);
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    RegisterMap run() {
        if (peek().kind == TokenKind::end) throw ParseError(peek().line, "exactly one addrmap expected, found none");
        RegisterMap map = addrmap();
        if (peek().kind != TokenKind::end) {
            if (is_keyword("addrmap")) throw ParseError(peek().line, "exactly one addrmap expected");
            throw ParseError(peek().line, "unexpected '" + peek().text + "' after addrmap");
        }
        return map;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool is_keyword(std::string_view kw) const { return peek().kind == TokenKind::ident && peek().text == kw; }
    bool is_punct(char c) const { return peek().kind == TokenKind::punct && peek().text[0] == c; }

    void expect_punct(char c, std::string_view context) {
        if (!is_punct(c)) {
            throw ParseError(peek().line, std::string("expected '") + c + "' " + std::string(context) + ", found " +
                                              describe(peek()));
        }
        next();
    }

    Token expect_ident(std::string_view what) {
        if (peek().kind != TokenKind::ident) throw ParseError(peek().line, "expected " + std::string(what) + ", found " + describe(peek()));
        return next();
    }

    std::uint64_t expect_int(std::string_view what) {
        if (peek().kind != TokenKind::integer) throw ParseError(peek().line, "expected " + std::string(what) + ", found " + describe(peek()));
        return next().value;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
        case TokenKind::end: return "end of input";
        case TokenKind::string: return "string";
        default: return "'" + t.text + "'";
        }
    }

    Property property(Scope scope) {
        Token name = expect_ident("property name");
        if (!known_property(name.text)) throw ParseError(name.line, "unsupported property '" + name.text + "'");
        if (!allowed(scope, name.text)) {
            throw ParseError(name.line, "property '" + name.text + "' is not allowed in " + std::string(scope_name(scope)));
        }
        Property prop{name.text, true, false, name.line};
        if (is_punct('=')) {
            next();
            Token value = next();
            switch (value.kind) {
            case TokenKind::integer: prop.value = value.value; break;
            case TokenKind::string: prop.value = value.text; break;
            case TokenKind::ident:
                if (value.text == "true") prop.value = true;
                else if (value.text == "false") prop.value = false;
                else {
                    prop.value = value.text;
                    prop.identifier = true;
                }
                break;
            default: throw ParseError(value.line, "expected a value for property '" + name.text + "'");
            }
        }
        expect_punct(';', "after property");
        return prop;
    }

    static void check_duplicate(std::set<std::string>& seen, const Property& p) {
        if (!seen.insert(p.name).second) throw ParseError(p.line, "duplicate property '" + p.name + "'");
    }

    static const std::string& text_value(const Property& p) {
        if (auto* s = std::get_if<std::string>(&p.value); s && !p.identifier) return *s;
        throw ParseError(p.line, "property '" + p.name + "' expects a string");
    }

    static bool bool_value(const Property& p) {
        if (auto* b = std::get_if<bool>(&p.value)) return *b;
        throw ParseError(p.line, "property '" + p.name + "' expects true or false");
    }

    static std::uint64_t int_value(const Property& p) {
        if (auto* v = std::get_if<std::uint64_t>(&p.value)) return *v;
        throw ParseError(p.line, "property '" + p.name + "' expects an integer");
    }

    static Access access_value(const Property& p, bool allow_na) {
        const auto* s = std::get_if<std::string>(&p.value);
        if (s && p.identifier) {
            if (*s == "r") return Access::r;
            if (*s == "w") return Access::w;
            if (*s == "rw" || *s == "wr") return Access::rw;
            if (*s == "na" && allow_na) return Access::na;
        }
        throw ParseError(p.line, "invalid value for '" + p.name + "', expected " + (allow_na ? "r, w, rw or na" : "r, w or rw"));
    }

    RegisterMap addrmap() {
        Token kw = expect_ident("'addrmap'");
        if (kw.text != "addrmap") throw ParseError(kw.line, "expected 'addrmap', found '" + kw.text + "'");
        RegisterMap map;
        map.line = kw.line;
        map.name = expect_ident("addrmap name").text;
        expect_punct('{', "to open addrmap");

        std::set<std::string> seen_props;
        std::set<std::string> reg_names;
        bool big = false;
        bool little = false;
        while (!is_punct('}')) {
            if (peek().kind == TokenKind::end) throw ParseError(peek().line, "unterminated addrmap '" + map.name + "'");
            if (is_keyword("reg")) {
                Register reg = register_def();
                if (!reg_names.insert(reg.name).second) throw ParseError(reg.line, "duplicate register '" + reg.name + "'");
                map.registers.push_back(std::move(reg));
            } else if (is_keyword("addrmap")) {
                throw ParseError(peek().line, "nested addrmaps are not supported");
            } else if (is_keyword("field")) {
                throw ParseError(peek().line, "field must be declared inside a reg");
            } else {
                Property p = property(Scope::addrmap);
                check_duplicate(seen_props, p);
                if (p.name == "name") map.display_name = text_value(p);
                else if (p.name == "desc") map.desc = text_value(p);
                else if (p.name == "bigendian") big = bool_value(p);
                else little = bool_value(p);
            }
        }
        next();
        expect_punct(';', "after addrmap");
        if (big && little) throw ParseError(map.line, "addrmap cannot be both bigendian and littleendian");
        map.endianness = big ? Endianness::big : little ? Endianness::little : Endianness::unspecified;
        return map;
    }

    Register register_def() {
        Register reg;
        reg.line = next().line;
        expect_punct('{', "to open reg");
        std::set<std::string> seen_props;
        std::set<std::string> field_names;
        while (!is_punct('}')) {
            if (peek().kind == TokenKind::end) throw ParseError(peek().line, "unterminated reg");
            if (is_keyword("field")) {
                Field f = field_def();
                if (!field_names.insert(f.name).second) throw ParseError(f.line, "duplicate field '" + f.name + "'");
                reg.fields.push_back(std::move(f));
            } else if (is_keyword("reg") || is_keyword("addrmap")) {
                throw ParseError(peek().line, "'" + peek().text + "' cannot be nested in a reg");
            } else {
                Property p = property(Scope::reg);
                check_duplicate(seen_props, p);
                if (p.name == "name") reg.display_name = text_value(p);
                else if (p.name == "desc") reg.desc = text_value(p);
                else {
                    auto width = int_value(p);
                    if (width != 8 && width != 16 && width != 32 && width != 64) {
                        throw ParseError(p.line, "regwidth must be 8, 16, 32 or 64");
                    }
                    reg.regwidth = static_cast<unsigned>(width);
                }
            }
        }
        next();
        reg.name = expect_ident("register instance name").text;
        if (!is_punct('@')) throw ParseError(peek().line, "missing '@ <offset>' for register '" + reg.name + "'");
        next();
        reg.offset = expect_int("register offset");
        expect_punct(';', "after register instance");
        return reg;
    }

    Field field_def() {
        Field f;
        f.line = next().line;
        expect_punct('{', "to open field");
        std::set<std::string> seen_props;
        while (!is_punct('}')) {
            if (peek().kind == TokenKind::end) throw ParseError(peek().line, "unterminated field");
            Property p = property(Scope::field);
            check_duplicate(seen_props, p);
            if (p.name == "name") f.display_name = text_value(p);
            else if (p.name == "desc") f.desc = text_value(p);
            else if (p.name == "sw") f.sw = access_value(p, false);
            else if (p.name == "hw") f.hw = access_value(p, true);
            else if (p.name == "reset") f.reset = int_value(p);
            else {
                if (auto* v = std::get_if<std::uint64_t>(&p.value)) f.update_rate = std::to_string(*v);
                else if (auto* s = std::get_if<std::string>(&p.value)) f.update_rate = *s;
                else throw ParseError(p.line, "property 'update_rate' expects a string");
            }
        }
        next();
        Token name = expect_ident("field instance name");
        f.name = name.text;
        expect_punct('[', "for field bit range");
        auto msb = expect_int("msb");
        expect_punct(':', "in field bit range");
        auto lsb = expect_int("lsb");
        expect_punct(']', "to close field bit range");
        expect_punct(';', "after field instance");
        if (msb < lsb) throw ParseError(name.line, "msb must be >= lsb");
        if (msb > 63) throw ParseError(name.line, "bit index exceeds 63");
        f.msb = static_cast<unsigned>(msb);
        f.lsb = static_cast<unsigned>(lsb);
        return f;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

RegisterMap parse_rdl(std::string_view source, std::size_t first_line) {
    return Parser(Lexer(source, first_line).run()).run();
}

} // namespace icdoc::rdl
