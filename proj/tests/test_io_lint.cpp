#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "bellforge/catalog.hpp"
#include "bellforge/io.hpp"
#include "bellforge/lint.hpp"

using namespace bellforge;

TEST_CASE("inequality documents round-trip") {
  for (const auto& e : catalog()) {
    const auto doc = e.document();
    const auto back = document_from_json(to_json(doc));
    REQUIRE(back.rows.size() == doc.rows.size());
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
      CHECK(back.rows[i].pattern == doc.rows[i].pattern);
      CHECK(back.rows[i].weight == doc.rows[i].weight);
      CHECK(back.rows[i].sign == doc.rows[i].sign);
    }
  }
  const auto chsh = catalog_entry("chsh").inequality();
  CHECK(inequality_from_json(to_json(chsh)) == chsh);
}

TEST_CASE("states and settings round-trip") {
  const auto psi = printed_state();
  const auto back = state_from_json(to_json(psi));
  for (std::size_t i = 0; i < psi.dimension(); ++i) CHECK(back.amplitude(i) == psi.amplitude(i));
  const SettingSet s(std::vector<PartySetting>{{{0, 0, 1}, {1, 0, 0}}});
  CHECK(settings_from_json(to_json(s)).party(0).second == Direction{1, 0, 0});
}

TEST_CASE("parse errors name the location") {
  try {
    parse_json_text("{\n  \"n\": 3,\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(inequality_from_json(parse_json_text(R"({"n": 2, "terms": [{"pattern": "+x"}]})")), ParseError);
  CHECK_THROWS_AS(inequality_from_json(parse_json_text(R"({"terms": []})")), ParseError);
}

TEST_CASE("lint reports") {
  const auto a = lint(catalog_entry("n5-a").document());
  CHECK(a.ok());
  CHECK(a.coverage.mass == 32);
  CHECK(a.orbit_closed);
  REQUIRE(a.mirror);
  CHECK(a.mirror->mirror);

  const auto n7 = lint(catalog_entry("n7").document());
  CHECK_FALSE(n7.ok());
  CHECK(n7.coverage.mass == 114);
  CHECK(n7.coverage.uncovered.size() == 14);

  const auto n9 = lint(catalog_entry("n9-a").document());
  CHECK_FALSE(n9.duplicates.empty());
  CHECK(n9.rows > n9.distinct);
  CHECK_FALSE(render(n9).empty());
  CHECK(to_json(n9).contains("duplicates"));
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "bellforge_io_test.json";
  write_json_file(path, to_json(catalog_entry("n3-complete").inequality()));
  CHECK(inequality_from_json(read_json_file(path)) == catalog_entry("n3-complete").inequality());
  {
    std::ofstream(path) << "{ broken";
  }
  CHECK_THROWS_AS(read_json_file(path), ParseError);
  std::filesystem::remove(path);
}
