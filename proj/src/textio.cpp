#include "trimat/textio.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include "trimat/errors.hpp"

namespace trimat {

namespace {

const std::set<std::string, std::less<>> kKeywords = {"field", "matrix",
                                                      "mscalar", "layer"};

// Guards against absurd dimensions from fuzzed input before any allocation.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 22;
constexpr std::uint64_t kMaxDim = 100000;

bool is_atom_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ||
           c == '+' || c == '-' || c == '.' || c == '/';
}

bool is_punct_char(char c) {
    return c == ':' || c == '{' || c == '}' || c == '[' || c == ']' || c == ';';
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

struct Token {
    enum class Kind { Atom, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 0;
    std::size_t col = 0;

    std::string describe() const {
        switch (kind) {
            case Kind::Atom: return "`" + text + "`";
            case Kind::Punct: return "`" + text + "`";
            case Kind::End: return "end of input";
        }
        return "?";
    }
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= src_.size()) {
            tok.kind = Token::Kind::End;
            return tok;
        }
        char c = src_[pos_];
        if (is_punct_char(c)) {
            tok.kind = Token::Kind::Punct;
            tok.text = std::string(1, c);
            advance();
            return tok;
        }
        if (is_atom_char(c)) {
            tok.kind = Token::Kind::Atom;
            while (pos_ < src_.size() && is_atom_char(src_[pos_])) {
                tok.text += src_[pos_];
                advance();
            }
            return tok;
        }
        throw SyntaxError(line_, col_,
                          "unexpected character '" + printable(c) + "'");
    }

    Token peek() {
        std::size_t pos = pos_, line = line_, col = col_;
        Token tok = next();
        pos_ = pos;
        line_ = line;
        col_ = col;
        return tok;
    }

    // Raw text from the current position to end of line, with any comment
    // stripped and surrounding whitespace trimmed. Consumes the newline.
    std::string rest_of_line() {
        std::string out;
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            if (src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                break;
            }
            out += src_[pos_];
            advance();
        }
        if (pos_ < src_.size()) advance();
        std::size_t b = out.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        std::size_t e = out.find_last_not_of(" \t\r");
        return out.substr(b, e - b + 1);
    }

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                advance();
            } else {
                break;
            }
        }
    }

    static std::string printable(char c) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isprint(u) != 0) return std::string(1, c);
        std::ostringstream os;
        os << "\\x" << std::hex << static_cast<int>(u);
        return os.str();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Document run() {
        Token head = lex_.next();
        if (head.kind != Token::Kind::Atom || head.text != "field")
            throw SyntaxError(head.line, head.col,
                              "expected `field` header, got " + head.describe());
        std::string spec_text = lex_.rest_of_line();
        FieldSpec spec = [&] {
            try {
                return parse_field_spec(spec_text);
            } catch (const InvalidFieldSpec& e) {
                throw SyntaxError(head.line, head.col, e.what());
            }
        }();

        Document doc(spec);
        Token tok = lex_.next();
        if (tok.kind == Token::Kind::End)
            throw SyntaxError(tok.line, tok.col,
                              "expected at least one object after the header");
        while (tok.kind != Token::Kind::End) {
            parse_object(doc, tok);
            tok = lex_.next();
        }
        return doc;
    }

private:
    Token expect_atom(const char* what) {
        Token tok = lex_.next();
        if (tok.kind != Token::Kind::Atom)
            throw SyntaxError(tok.line, tok.col,
                              std::string("expected ") + what + ", got " +
                                  tok.describe());
        return tok;
    }

    Token expect_punct(char c) {
        Token tok = lex_.next();
        if (tok.kind != Token::Kind::Punct || tok.text[0] != c)
            throw SyntaxError(tok.line, tok.col,
                              std::string("expected `") + c + "`, got " +
                                  tok.describe());
        return tok;
    }

    std::size_t parse_count(const Token& tok, const char* what,
                            std::uint64_t max) {
        if (!all_digits(tok.text) || tok.text.size() > 18)
            throw SyntaxError(tok.line, tok.col,
                              std::string("expected ") + what + ", got " +
                                  tok.describe());
        std::uint64_t v = std::stoull(tok.text);
        if (v == 0 || v > max)
            throw ShapeError(tok.line, tok.col,
                             std::string(what) + " " + tok.text +
                                 " is out of range");
        return static_cast<std::size_t>(v);
    }

    FieldElement parse_element(const FieldSpec& spec, const Token& tok) {
        try {
            return spec.parse(tok.text);
        } catch (const FieldLiteralError& e) {
            throw FieldLiteralError("line " + std::to_string(tok.line) +
                                    ", column " + std::to_string(tok.col) +
                                    ": " + e.what());
        }
    }

    void parse_object(Document& doc, const Token& name) {
        if (name.kind != Token::Kind::Atom || !is_valid_object_name(name.text))
            throw SyntaxError(name.line, name.col,
                              "expected object name, got " + name.describe());
        if (doc.find(name.text) != nullptr)
            throw SyntaxError(name.line, name.col,
                              "duplicate object name `" + name.text + "`");
        expect_punct(':');
        Token kind = expect_atom("`matrix` or `mscalar`");
        if (kind.text == "matrix") {
            doc.add(name.text, parse_matrix(doc.field()));
        } else if (kind.text == "mscalar") {
            doc.add(name.text, parse_mscalar(doc.field()));
        } else {
            throw SyntaxError(kind.line, kind.col,
                              "expected `matrix` or `mscalar`, got " +
                                  kind.describe());
        }
    }

    Matrix3 parse_matrix(const FieldSpec& spec) {
        // Dimensions may be written `3x3x2` or spaced out `3 x 3 x 2`; both
        // lex to atoms that concatenate to the same string.
        Token first = lex_.next();
        std::string dims;
        Token tok = first;
        while (tok.kind == Token::Kind::Atom) {
            dims += tok.text;
            tok = lex_.next();
        }
        if (tok.kind != Token::Kind::Punct || tok.text[0] != '{')
            throw SyntaxError(tok.line, tok.col,
                              "expected `{` after dimensions, got " +
                                  tok.describe());
        std::size_t m = 0, n = 0, p = 0;
        if (!split_dims(dims, m, n, p))
            throw SyntaxError(first.line, first.col,
                              "expected dimensions of the form `MxNxP`, got `" +
                                  dims + "`");
        if (m == 0 || n == 0 || p == 0 || m > kMaxDim || n > kMaxDim ||
            p > kMaxDim ||
            static_cast<std::uint64_t>(m) * n * p > kMaxElements)
            throw ShapeError(first.line, first.col,
                             "dimensions " + dims + " are out of range");

        std::map<std::size_t, Matrix2> layers;
        while (true) {
            Token next = lex_.peek();
            if (next.kind == Token::Kind::Punct && next.text[0] == '}') {
                lex_.next();
                break;
            }
            Token kw = expect_atom("`layer` or `}`");
            if (kw.text != "layer")
                throw SyntaxError(kw.line, kw.col,
                                  "expected `layer` or `}`, got " +
                                      kw.describe());
            Token idx = expect_atom("layer index");
            std::size_t k = parse_count(idx, "layer index", kMaxDim);
            if (k > p)
                throw ShapeError(idx.line, idx.col,
                                 "layer index " + idx.text + " exceeds depth " +
                                     std::to_string(p));
            if (layers.count(k) != 0)
                throw DuplicateLayer(idx.line, idx.col,
                                     "layer " + idx.text +
                                         " appears more than once");
            expect_punct(':');
            layers.emplace(k, parse_layer(spec, m, n));
        }
        for (std::size_t k = 1; k <= p; ++k)
            if (layers.count(k) == 0)
                throw MissingLayer(lex_.line(), lex_.col(),
                                   "layer " + std::to_string(k) +
                                       " is missing (depth " +
                                       std::to_string(p) + ")");
        std::vector<Matrix2> ordered;
        ordered.reserve(p);
        for (auto& [k, layer] : layers) ordered.push_back(std::move(layer));
        return Matrix3::from_layers(std::move(ordered));
    }

    Matrix2 parse_layer(const FieldSpec& spec, std::size_t m, std::size_t n) {
        Token open = expect_punct('[');
        std::vector<std::vector<FieldElement>> rows;
        std::vector<FieldElement> row;
        while (true) {
            Token tok = lex_.next();
            if (tok.kind == Token::Kind::Atom) {
                row.push_back(parse_element(spec, tok));
                continue;
            }
            if (tok.kind == Token::Kind::Punct &&
                (tok.text[0] == ';' || tok.text[0] == ']')) {
                if (row.empty())
                    throw SyntaxError(tok.line, tok.col,
                                      "expected element before `" + tok.text +
                                          "`");
                if (row.size() != n)
                    throw ShapeError(tok.line, tok.col,
                                     "row has " + std::to_string(row.size()) +
                                         " entries, expected " +
                                         std::to_string(n));
                rows.push_back(std::move(row));
                row.clear();
                if (tok.text[0] == ']') break;
                continue;
            }
            throw SyntaxError(tok.line, tok.col,
                              "expected element, `;`, or `]`, got " +
                                  tok.describe());
        }
        if (rows.size() != m)
            throw ShapeError(open.line, open.col,
                             "layer has " + std::to_string(rows.size()) +
                                 " rows, expected " + std::to_string(m));
        Matrix2 out(m, n, spec.zero());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out.set_entry(i + 1, j + 1, rows[i][j]);
        return out;
    }

    MultiScalar parse_mscalar(const FieldSpec& spec) {
        Token depth = expect_atom("depth");
        std::size_t p = parse_count(depth, "depth", kMaxElements);
        expect_punct('[');
        std::vector<FieldElement> comps;
        while (true) {
            Token tok = lex_.next();
            if (tok.kind == Token::Kind::Atom) {
                if (comps.size() == p)
                    throw ShapeError(tok.line, tok.col,
                                     "multi-scalar has more than " +
                                         std::to_string(p) + " components");
                comps.push_back(parse_element(spec, tok));
                continue;
            }
            if (tok.kind == Token::Kind::Punct && tok.text[0] == ']') {
                if (comps.size() != p)
                    throw ShapeError(tok.line, tok.col,
                                     "multi-scalar has " +
                                         std::to_string(comps.size()) +
                                         " components, expected " +
                                         std::to_string(p));
                break;
            }
            throw SyntaxError(tok.line, tok.col,
                              "expected component or `]`, got " +
                                  tok.describe());
        }
        return MultiScalar(std::move(comps));
    }

    static bool split_dims(const std::string& dims, std::size_t& m,
                           std::size_t& n, std::size_t& p) {
        std::size_t a = dims.find('x');
        if (a == std::string::npos) return false;
        std::size_t b = dims.find('x', a + 1);
        if (b == std::string::npos || dims.find('x', b + 1) != std::string::npos)
            return false;
        std::string ms = dims.substr(0, a);
        std::string ns = dims.substr(a + 1, b - a - 1);
        std::string ps = dims.substr(b + 1);
        if (!all_digits(ms) || !all_digits(ns) || !all_digits(ps)) return false;
        if (ms.size() > 9 || ns.size() > 9 || ps.size() > 9) return false;
        m = std::stoull(ms);
        n = std::stoull(ns);
        p = std::stoull(ps);
        return true;
    }

    Lexer lex_;
};

void write_layer(std::ostringstream& os, const Matrix2& layer) {
    os << '[';
    for (std::size_t i = 1; i <= layer.rows(); ++i) {
        if (i > 1) os << "; ";
        for (std::size_t j = 1; j <= layer.cols(); ++j) {
            if (j > 1) os << ' ';
            os << layer.entry(i, j).str();
        }
    }
    os << ']';
}

}  // namespace

bool is_valid_object_name(std::string_view name) {
    if (name.empty()) return false;
    char c0 = name[0];
    if (std::isalpha(static_cast<unsigned char>(c0)) == 0 && c0 != '_')
        return false;
    for (char c : name)
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_')
            return false;
    return kKeywords.count(name) == 0;
}

void Document::add(std::string name, TensorObject object) {
    if (!is_valid_object_name(name))
        throw Error("invalid object name `" + name + "`");
    if (find(name) != nullptr)
        throw Error("duplicate object name `" + name + "`");
    const FieldSpec& spec = std::holds_alternative<Matrix3>(object)
                                ? std::get<Matrix3>(object).spec()
                                : std::get<MultiScalar>(object).spec();
    if (!(spec == field_))
        throw FieldMismatch("object `" + name + "` is over " + spec.str() +
                            ", document is over " + field_.str());
    objects_.emplace_back(std::move(name), std::move(object));
}

const TensorObject* Document::find(std::string_view name) const {
    for (const auto& [n, obj] : objects_)
        if (n == name) return &obj;
    return nullptr;
}

Document parse_document(std::string_view text) {
    return Parser(text).run();
}

std::string serialize(const Matrix3& m, Layout layout) {
    std::ostringstream os;
    os << "matrix " << m.rows() << 'x' << m.cols() << 'x' << m.depth() << " {";
    for (std::size_t k = 1; k <= m.depth(); ++k) {
        os << (layout == Layout::Pretty ? "\n  " : " ");
        os << "layer " << k << ": ";
        write_layer(os, m.layer(k));
    }
    os << (layout == Layout::Pretty ? "\n}" : " }");
    return os.str();
}

std::string serialize(const MultiScalar& s) {
    std::ostringstream os;
    os << "mscalar " << s.depth() << " [";
    for (std::size_t k = 1; k <= s.depth(); ++k) {
        if (k > 1) os << ' ';
        os << s.component(k).str();
    }
    os << ']';
    return os.str();
}

std::string serialize(const TensorObject& obj, Layout layout) {
    if (std::holds_alternative<Matrix3>(obj))
        return serialize(std::get<Matrix3>(obj), layout);
    return serialize(std::get<MultiScalar>(obj));
}

std::string serialize(const Document& doc) {
    std::ostringstream os;
    os << "field " << doc.field().str() << '\n';
    for (const auto& [name, obj] : doc.objects())
        os << name << ": " << serialize(obj, Layout::Pretty) << '\n';
    return os.str();
}

nlohmann::ordered_json to_json(const Document& doc) {
    nlohmann::ordered_json objects = nlohmann::ordered_json::object();
    for (const auto& [name, obj] : doc.objects()) {
        nlohmann::ordered_json entry;
        if (const Matrix3* m = std::get_if<Matrix3>(&obj)) {
            entry["kind"] = "matrix";
            entry["dims"] = {m->rows(), m->cols(), m->depth()};
            nlohmann::ordered_json layers = nlohmann::ordered_json::array();
            for (std::size_t k = 1; k <= m->depth(); ++k) {
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                for (std::size_t i = 1; i <= m->rows(); ++i) {
                    nlohmann::ordered_json row = nlohmann::ordered_json::array();
                    for (std::size_t j = 1; j <= m->cols(); ++j)
                        row.push_back(m->layer(k).entry(i, j).str());
                    rows.push_back(std::move(row));
                }
                layers.push_back(std::move(rows));
            }
            entry["layers"] = std::move(layers);
        } else {
            const MultiScalar& s = std::get<MultiScalar>(obj);
            entry["kind"] = "mscalar";
            entry["dims"] = {s.depth()};
            nlohmann::ordered_json comps = nlohmann::ordered_json::array();
            for (std::size_t k = 1; k <= s.depth(); ++k)
                comps.push_back(s.component(k).str());
            entry["components"] = std::move(comps);
        }
        objects[name] = std::move(entry);
    }
    nlohmann::ordered_json j;
    j["field"] = doc.field().str();
    j["objects"] = std::move(objects);
    return j;
}

Document document_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("objects") ||
        !j["field"].is_string() || !j["objects"].is_object())
        throw Error("json document must have `field` and `objects`");
    FieldSpec spec = parse_field_spec(j["field"].get<std::string>());
    Document doc(spec);
    for (const auto& [name, entry] : j["objects"].items()) {
        if (!entry.is_object() || !entry.contains("kind"))
            throw Error("json object `" + name + "` is malformed");
        std::string kind = entry.value("kind", "");
        if (kind == "matrix") {
            if (!entry.contains("dims") || !entry["dims"].is_array() ||
                entry["dims"].size() != 3 || !entry.contains("layers"))
                throw Error("json matrix `" + name + "` is malformed");
            std::size_t m = entry["dims"][0].get<std::size_t>();
            std::size_t n = entry["dims"][1].get<std::size_t>();
            std::size_t p = entry["dims"][2].get<std::size_t>();
            if (m == 0 || n == 0 || p == 0 ||
                static_cast<std::uint64_t>(m) * n * p > kMaxElements)
                throw Error("json matrix `" + name +
                            "` has out-of-range dimensions");
            const auto& layers = entry["layers"];
            if (!layers.is_array() || layers.size() != p)
                throw Error("json matrix `" + name + "` needs " +
                            std::to_string(p) + " layers");
            std::vector<Matrix2> mats;
            mats.reserve(p);
            for (std::size_t k = 0; k < p; ++k) {
                const auto& rows = layers[k];
                if (!rows.is_array() || rows.size() != m)
                    throw Error("json matrix `" + name + "` layer " +
                                std::to_string(k + 1) + " needs " +
                                std::to_string(m) + " rows");
                Matrix2 mat(m, n, spec.zero());
                for (std::size_t i = 0; i < m; ++i) {
                    const auto& row = rows[i];
                    if (!row.is_array() || row.size() != n)
                        throw Error("json matrix `" + name + "` layer " +
                                    std::to_string(k + 1) + " row " +
                                    std::to_string(i + 1) + " needs " +
                                    std::to_string(n) + " entries");
                    for (std::size_t jj = 0; jj < n; ++jj)
                        mat.set_entry(i + 1, jj + 1,
                                      spec.parse(row[jj].get<std::string>()));
                }
                mats.push_back(std::move(mat));
            }
            doc.add(name, Matrix3::from_layers(std::move(mats)));
        } else if (kind == "mscalar") {
            if (!entry.contains("components") ||
                !entry["components"].is_array() ||
                entry["components"].empty() ||
                entry["components"].size() > kMaxElements)
                throw Error("json mscalar `" + name + "` is malformed");
            std::vector<FieldElement> comps;
            for (const auto& c : entry["components"])
                comps.push_back(spec.parse(c.get<std::string>()));
            doc.add(name, MultiScalar(std::move(comps)));
        } else {
            throw Error("json object `" + name + "` has unknown kind `" +
                        kind + "`");
        }
    }
    if (doc.objects().empty()) throw Error("json document has no objects");
    return doc;
}

}  // namespace trimat
