#ifndef FGPD_SERIALIZE_HPP_
#define FGPD_SERIALIZE_HPP_

// JSON documents {kind, version, body}. Tables are explicit entry lists such
// as compose: [[g1, g2, g1g2], ...]. Output is canonical: ids are sorted,
// entry lists are sorted and keys appear in sorted order, so equal
// structures serialize to identical bytes. Parsing lists ids in sorted order.

#include <string>
#include <string_view>
#include <variant>

#include "fgpd/bundles.hpp"
#include "fgpd/core.hpp"
#include "fgpd/gauge.hpp"
#include "fgpd/hs.hpp"

namespace fgpd {

inline constexpr std::string_view kFormatVersion = "1";

using Document = std::variant<FiniteGroupoid, GroupoidMorphism, GroupoidAction,
                              PrincipalBundle, BundleMorphism, Ggt, HSMorphism,
                              HSMorphismMap>;

// groupoid, morphism, action, bundle, bundle_morphism, ggt, hs, hs_morphism
std::string_view kind_name(const Document& d);

class ParseError : public Error {
 public:
  enum class Kind { syntax, schema, version };

  ParseError(Kind kind, std::string message, std::string path = {}, std::size_t line = 0,
             std::size_t column = 0);
  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }  // JSON pointer
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

Document parse_document(std::string_view text);
std::string serialize(const Document& d);

// Parses and checks the kind, throwing a schema error on a mismatch.
template <class T>
T parse_as(std::string_view text) {
  auto d = parse_document(text);
  if (auto* v = std::get_if<T>(&d)) return std::move(*v);
  throw ParseError(ParseError::Kind::schema,
                   "unexpected document kind '" + std::string(kind_name(d)) + "'", "/kind");
}

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace fgpd

#endif  // FGPD_SERIALIZE_HPP_
