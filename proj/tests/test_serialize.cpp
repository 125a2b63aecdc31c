#include <gtest/gtest.h>

#include <filesystem>

#include "fgpd/serialize.hpp"
#include "support.hpp"

namespace fgpd {
namespace {

namespace fs = std::filesystem;

std::vector<Document> samples() {
  std::vector<Document> out;
  auto const g = share(named_groupoid("pair2"));
  auto const s3 = share(named_groupoid("s3"));
  out.emplace_back(*g);
  out.emplace_back(identity_morphism(g));
  auto const b = share(unit_bundle(s3));
  out.emplace_back(*b);
  out.emplace_back(identity_morphism(b));
  out.emplace_back(identity_ggt(b));
  auto const h = share(hs_from_groupoid_morphism(identity_morphism(g)));
  out.emplace_back(left_action(*h));
  out.emplace_back(*h);
  out.emplace_back(HSMorphismMap{h, h, identity_morphism(h->bundle).map});
  auto const inst = random_bundle_pair(testing::small_spec(5, 12));
  out.emplace_back(*inst.first);
  out.emplace_back(*random_hs_pair(testing::small_spec(6, 12)).first);
  return out;
}

ParseError parse_error(std::string_view text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(ParseError::Kind::syntax, "none");
}

std::string z2_text() { return serialize(named_groupoid("z2")); }

TEST(Serialize, EveryKindRoundTrips) {
  std::set<std::string> kinds;
  for (auto const& d : samples()) {
    auto const text = serialize(d);
    auto const back = parse_document(text);
    EXPECT_EQ(kind_name(back), kind_name(d));
    EXPECT_EQ(serialize(back), text) << kind_name(d);
    kinds.insert(std::string(kind_name(d)));
  }
  EXPECT_EQ(kinds.size(), 8u);
}

TEST(Serialize, ParsedStructuresStillValidate) {
  auto const b = parse_as<PrincipalBundle>(serialize(unit_bundle(share(named_groupoid("s3")))));
  EXPECT_TRUE(validate_bundle(b).ok());
  auto const h = parse_as<HSMorphism>(
      serialize(hs_from_groupoid_morphism(identity_morphism(share(named_groupoid("z2"))))));
  EXPECT_TRUE(validate_hs(h).ok());
}

TEST(Serialize, RelabelledInputsGiveIdenticalBytes) {
  auto const inst = random_bundle_pair(testing::small_spec(9, 12));
  Rng rng(1);
  auto const perm = rng.permutation(inst.first->size());
  // Same names, different storage order.
  std::vector<std::string> names(inst.first->size());
  for (std::size_t i = 0; i < perm.size(); ++i) names[perm[i]] = inst.first->points[i];
  auto const same = permute_points(*inst.first, perm, names);
  EXPECT_EQ(serialize(same), serialize(*inst.first));
}

TEST(Serialize, FixtureFilesAreCanonical) {
  std::size_t files = 0;
  for (auto const& entry : fs::directory_iterator(FGPD_FIXTURE_DIR)) {
    auto const text = read_file(entry.path().string());
    EXPECT_EQ(serialize(parse_document(text)), text) << entry.path();
    ++files;
  }
  EXPECT_GE(files, 6u);
}

TEST(Serialize, TruncatedFileIsASyntaxError) {
  auto const text = z2_text();
  auto const e = parse_error(text.substr(0, text.size() / 2));
  EXPECT_EQ(e.kind(), ParseError::Kind::syntax);
  EXPECT_GT(e.line(), 1u);
  EXPECT_GT(e.column(), 0u);
}

TEST(Serialize, DanglingIdIsASchemaErrorWithPath) {
  auto text = z2_text();
  auto const at = text.find("[\"a\", \"a\", \"e\"]");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 15, "[\"a\", \"a\", \"zz\"]");
  auto const e = parse_error(text);
  EXPECT_EQ(e.kind(), ParseError::Kind::schema);
  EXPECT_NE(e.path().find("compose"), std::string::npos) << e.path();
  EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
}

TEST(Serialize, UnknownFieldIsASchemaError) {
  auto text = z2_text();
  text.replace(text.find("\"body\": {"), 9, "\"body\": {\"bogus\": 1,");
  auto const e = parse_error(text);
  EXPECT_EQ(e.kind(), ParseError::Kind::schema);
  EXPECT_NE(e.path().find("bogus"), std::string::npos) << e.path();
}

TEST(Serialize, WrongVersionIsRejected) {
  auto text = z2_text();
  text.replace(text.find("\"version\": \"1\""), 14, "\"version\": \"2\"");
  EXPECT_EQ(parse_error(text).kind(), ParseError::Kind::version);
}

TEST(Serialize, UnknownKindAndWrongKind) {
  auto text = z2_text();
  text.replace(text.find("\"groupoid\""), 10, "\"gadget\"");
  EXPECT_EQ(parse_error(text).kind(), ParseError::Kind::schema);
  EXPECT_THROW(parse_as<PrincipalBundle>(z2_text()), ParseError);
}

TEST(Serialize, InvalidButWellFormedStructuresParse) {
  // Structural rules are the validator's job, not the parser's.
  auto g = named_groupoid("z2");
  g.compose[0] = g.compose[1];
  auto const back = parse_as<FiniteGroupoid>(serialize(g));
  EXPECT_FALSE(validate_groupoid(back).ok());
}

}  // namespace
}  // namespace fgpd
