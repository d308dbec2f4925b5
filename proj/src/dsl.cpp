#include "drgm/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace drgm {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::string text = "invalid model:";
    for (const Diagnostic& d : diagnostics) text += "\n  [" + d.rule + "] " + d.message;
    return text;
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

enum class TokenType { Ident, String, Number, Punct, End };

struct Token {
    TokenType type = TokenType::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_space_and_comments();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= src_.size()) {
                tokens.push_back(tok);
                return tokens;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                tok.type = TokenType::Ident;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    tok.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
                tok.type = TokenType::Number;
                tok.text = lex_number(tok);
            } else if (c == '"') {
                tok.type = TokenType::String;
                tok.text = lex_string(tok);
            } else if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',' || c == ':') {
                tok.type = TokenType::Punct;
                tok.text = std::string(1, advance());
            } else {
                throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
            }
            tokens.push_back(std::move(tok));
        }
    }

private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string lex_number(const Token& start) {
        std::string text;
        auto digit = [&] { return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])); };
        if (src_[pos_] == '-' || src_[pos_] == '+') text += advance();
        while (digit()) text += advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            text += advance();
            while (digit()) text += advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            text += advance();
            if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) text += advance();
            if (!digit()) throw ParseError(line_, column_, "malformed exponent in number '" + text + "'");
            while (digit()) text += advance();
        }
        if (std::none_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw ParseError(start.line, start.column, "malformed number '" + text + "'");
        }
        return text;
    }

    std::string lex_string(const Token& start) {
        advance();  // opening quote
        std::string text;
        for (;;) {
            if (pos_ >= src_.size()) throw ParseError(start.line, start.column, "unterminated string");
            char c = advance();
            if (c == '"') return text;
            if (c == '\n') throw ParseError(start.line, start.column, "newline in string literal");
            if (c == '\\') {
                if (pos_ >= src_.size()) throw ParseError(start.line, start.column, "unterminated string");
                char e = advance();
                switch (e) {
                    case '"': text += '"'; break;
                    case '\\': text += '\\'; break;
                    case 'n': text += '\n'; break;
                    case 't': text += '\t'; break;
                    default: throw ParseError(line_, column_ - 1, std::string("unknown escape '\\") + e + "'");
                }
            } else {
                text += c;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    GoalModel run() {
        GoalModel model;
        expect_keyword("drgm");
        model.name = expect(TokenType::String, "model name string").text;
        if (accept_keyword("version")) model.version = expect(TokenType::String, "version string").text;
        if (accept_keyword("stage")) {
            const Token& tok = expect(TokenType::Ident, "customization stage");
            auto stage = parse_stage(tok.text);
            if (!stage) fail(tok, "unknown stage '" + tok.text + "' (expected base, problem_type or context)");
            model.stage = *stage;
        }
        while (peek_keyword("actor")) parse_actor(model);
        while (peek().type != TokenType::End) parse_link(model);
        return model;
    }

private:
    [[noreturn]] void fail(const Token& tok, const std::string& message) {
        throw ParseError(tok.line, tok.column, message);
    }

    const Token& peek() const { return tokens_[pos_]; }

    const Token& next() {
        const Token& tok = tokens_[pos_];
        if (tok.type != TokenType::End) ++pos_;
        return tok;
    }

    static std::string describe(const Token& tok) {
        switch (tok.type) {
            case TokenType::End: return "end of input";
            case TokenType::String: return "string \"" + tok.text + "\"";
            default: return "'" + tok.text + "'";
        }
    }

    const Token& expect(TokenType type, const std::string& what) {
        const Token& tok = peek();
        if (tok.type != type) fail(tok, "expected " + what + ", found " + describe(tok));
        return next();
    }

    bool peek_keyword(std::string_view kw) const { return peek().type == TokenType::Ident && peek().text == kw; }

    bool accept_keyword(std::string_view kw) {
        if (!peek_keyword(kw)) return false;
        next();
        return true;
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) fail(peek(), "expected '" + std::string(kw) + "', found " + describe(peek()));
    }

    bool accept_punct(char c) {
        if (peek().type == TokenType::Punct && peek().text[0] == c) {
            next();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c)) fail(peek(), std::string("expected '") + c + "', found " + describe(peek()));
    }

    double expect_number() {
        const Token& tok = expect(TokenType::Number, "number");
        double value = 0.0;
        const char* first = tok.text.data();
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, tok.text.data() + tok.text.size(), value);
        if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) fail(tok, "malformed number '" + tok.text + "'");
        return value;
    }

    void parse_actor(GoalModel& model) {
        expect_keyword("actor");
        Actor actor;
        actor.id = expect(TokenType::Ident, "actor id").text;
        actor.name = expect(TokenType::String, "actor name string").text;
        model.actors.push_back(actor);
        expect_punct('{');
        while (!accept_punct('}')) parse_element(model, actor.id);
    }

    void parse_element(GoalModel& model, const std::string& actor) {
        const Token& kind_tok = peek();
        if (kind_tok.type != TokenType::Ident) fail(kind_tok, "expected element kind or '}', found " + describe(kind_tok));
        auto kind = parse_element_kind(kind_tok.text);
        if (!kind) fail(kind_tok, "unknown element kind '" + kind_tok.text + "' (expected goal, softgoal, task or kpi)");
        next();
        Element e;
        e.kind = *kind;
        e.actor = actor;
        e.id = expect(TokenType::Ident, "element id").text;
        e.name = expect(TokenType::String, "element name string").text;
        if (accept_punct('{')) {
            while (!accept_punct('}')) parse_attribute(e);
        }
        model.elements.push_back(std::move(e));
    }

    void parse_attribute(Element& e) {
        const Token& tok = expect(TokenType::Ident, "attribute");
        if (tok.text == "importance") {
            expect_punct(':');
            const Token& level = expect(TokenType::Ident, "importance level");
            auto imp = parse_importance(level.text);
            if (!imp) fail(level, "unknown importance '" + level.text + "' (expected high, medium, low or none)");
            e.importance = *imp;
        } else if (tok.text == "kpi") {
            expect_punct(':');
            expect_punct('(');
            KpiDefinition kpi;
            kpi.worst = expect_number();
            expect_punct(',');
            kpi.threshold = expect_number();
            expect_punct(',');
            kpi.target = expect_number();
            expect_punct(',');
            kpi.unit = expect(TokenType::String, "unit string").text;
            expect_punct(')');
            e.kpi = kpi;
        } else if (tok.text == "na") {
            e.applicable = false;
        } else if (tok.text == "note") {
            expect_punct(':');
            e.note = expect(TokenType::String, "note string").text;
        } else {
            fail(tok, "unknown attribute '" + tok.text + "'");
        }
    }

    std::string expect_id(const std::string& what) { return expect(TokenType::Ident, what).text; }

    void parse_link(GoalModel& model) {
        const Token& tok = peek();
        if (accept_keyword("decomp")) {
            Decomposition d;
            d.child = expect_id("child id");
            const Token& op = expect(TokenType::Ident, "'and' or 'or'");
            if (op.text == "and") {
                d.type = DecompositionType::And;
            } else if (op.text == "or") {
                d.type = DecompositionType::Or;
            } else {
                fail(op, "expected 'and' or 'or', found " + describe(op));
            }
            expect_keyword("of");
            d.parent = expect_id("parent id");
            model.links.emplace_back(std::move(d));
        } else if (accept_keyword("contrib")) {
            Contribution c;
            c.source = expect_id("source id");
            const Token& level_tok = peek();
            if (level_tok.type != TokenType::Ident && level_tok.type != TokenType::Number) {
                fail(level_tok, "expected contribution level, found " + describe(level_tok));
            }
            auto level = ContributionLevel::parse(level_tok.text);
            if (!level) fail(level_tok, "invalid contribution level '" + level_tok.text + "'");
            next();
            c.level = *level;
            expect_keyword("to");
            c.destination = expect_id("destination id");
            model.links.emplace_back(std::move(c));
        } else if (tok.type == TokenType::Ident && tok.text == "actor") {
            fail(tok, "actors must be declared before links");
        } else {
            fail(tok, "expected 'decomp' or 'contrib', found " + describe(tok));
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

GoalModel parse_model_unchecked(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

GoalModel parse_model(std::string_view text) {
    GoalModel model = parse_model_unchecked(text);
    if (auto diagnostics = validate(model); !diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    return model;
}

std::string print_model(const GoalModel& model) {
    std::ostringstream out;
    out << "drgm " << quote(model.name);
    if (!model.version.empty()) out << " version " << quote(model.version);
    if (model.stage != CustomizationStage::Base) out << " stage " << to_string(model.stage);
    out << "\n";

    for (const Actor& actor : model.actors) {
        out << "\nactor " << actor.id << ' ' << quote(actor.name) << " {\n";
        std::vector<const Element*> elements;
        for (const Element& e : model.elements) {
            if (e.actor == actor.id) elements.push_back(&e);
        }
        std::stable_sort(elements.begin(), elements.end(), [](const Element* a, const Element* b) { return a->id < b->id; });
        for (const Element* e : elements) {
            out << "  " << to_string(e->kind) << ' ' << e->id << ' ' << quote(e->name) << " {\n";
            out << "    importance: " << to_string(e->importance) << "\n";
            if (e->kpi) {
                out << "    kpi: (" << number(e->kpi->worst) << ", " << number(e->kpi->threshold) << ", "
                    << number(e->kpi->target) << ", " << quote(e->kpi->unit) << ")\n";
            }
            if (!e->applicable) out << "    na\n";
            if (!e->note.empty()) out << "    note: " << quote(e->note) << "\n";
            out << "  }\n";
        }
        out << "}\n";
    }

    std::vector<const Link*> links;
    for (const Link& l : model.links) links.push_back(&l);
    std::stable_sort(links.begin(), links.end(), [](const Link* a, const Link* b) {
        return std::tie(link_destination(*a), link_source(*a)) < std::tie(link_destination(*b), link_source(*b));
    });
    if (!links.empty()) out << "\n";
    for (const Link* l : links) {
        if (const auto* c = std::get_if<Contribution>(l)) {
            out << "contrib " << c->source << ' ' << c->level.to_string() << " to " << c->destination << "\n";
        } else {
            const auto& d = std::get<Decomposition>(*l);
            out << "decomp " << d.child << (d.type == DecompositionType::And ? " and" : " or") << " of " << d.parent << "\n";
        }
    }
    return out.str();
}

}  // namespace drgm
