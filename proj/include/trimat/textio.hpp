#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "trimat/tensor3.hpp"

namespace trimat {

using TensorObject = std::variant<Matrix3, MultiScalar>;

// A parsed .m3 file: one field spec and a set of named objects over it,
// kept in insertion order.
class Document {
public:
    explicit Document(const FieldSpec& field) : field_(field) {}

    const FieldSpec& field() const { return field_; }

    // Validates the name ([A-Za-z_][A-Za-z0-9_]*, not a keyword, unique) and
    // that the object lives over the document's field.
    void add(std::string name, TensorObject object);

    const std::vector<std::pair<std::string, TensorObject>>& objects() const {
        return objects_;
    }
    const TensorObject* find(std::string_view name) const;

private:
    FieldSpec field_;
    std::vector<std::pair<std::string, TensorObject>> objects_;
};

bool is_valid_object_name(std::string_view name);

// Parses the document grammar:
//
//   document    := header object+
//   header      := "field" fieldspec NEWLINE
//   object      := NAME ":" ( matrix3 | multiscalar )
//   matrix3     := "matrix" INT "x" INT "x" INT "{" layer+ "}"
//   layer       := "layer" INT ":" "[" row (";" row)* "]"
//   multiscalar := "mscalar" INT "[" element+ "]"
//
// `#` starts a comment. Layer indices must cover 1..p exactly once, in any
// order. Errors carry line and column and never crash on arbitrary bytes.
Document parse_document(std::string_view text);

enum class Layout { Pretty, Compact };

// Canonical text forms: layers in ascending k, rationals in lowest terms,
// floats as shortest round-tripping decimals. parse(serialize(x)) == x.
std::string serialize(const Matrix3& m, Layout layout = Layout::Pretty);
std::string serialize(const MultiScalar& s);
std::string serialize(const TensorObject& obj, Layout layout = Layout::Pretty);
std::string serialize(const Document& doc);

// JSON mirror: {field, objects: {name: {kind, dims, layers|components}}}
// with elements as canonical literal strings.
nlohmann::ordered_json to_json(const Document& doc);
Document document_from_json(const nlohmann::ordered_json& j);

}  // namespace trimat
