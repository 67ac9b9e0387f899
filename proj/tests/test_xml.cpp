#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fasim/error.hpp"
#include "fasim/xml.hpp"

namespace xml = fasim::xml;
using fasim::ErrorKind;

namespace {

ErrorKind kind_of(const char* doc) {
  try {
    xml::parse(doc);
  } catch (const fasim::Error& e) {
    return e.kind();
  }
  FAIL("no error for: " << doc);
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("elements, attributes and text") {
  const auto root = xml::parse("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<a x='1' y=\"two\">\n  <b>hi</b>\n  <c/>\n</a>\n");
  CHECK(root.name == "a");
  REQUIRE(root.attribute("x") != nullptr);
  CHECK(*root.attribute("x") == "1");
  CHECK(*root.attribute("y") == "two");
  CHECK(root.attribute("z") == nullptr);
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[0].text == "hi");
  CHECK(root.children[1].name == "c");
  CHECK(root.children[1].line == 4);
}

TEST_CASE("entities, character references, CDATA and comments") {
  const auto root = xml::parse("<a>&lt;&amp;&gt;&quot;&apos;&#65;&#x42;<!-- skip --><![CDATA[<raw>]]><?pi x?></a>");
  CHECK(root.text == "<&>\"'AB<raw>");
  CHECK(xml::escape("a<b&\"c\">") == "a&lt;b&amp;&quot;c&quot;&gt;");
}

TEST_CASE("byte order mark is skipped") {
  CHECK(xml::parse("\xEF\xBB\xBF<a/>").name == "a");
}

TEST_CASE("malformed documents") {
  CHECK(kind_of("") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a></b>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a x=1/>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a x='1' x='2'/>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a>&bogus;</a>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a/><b/>") == ErrorKind::MalformedXML);
  CHECK(kind_of("text<a/>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<!DOCTYPE a><a/>") == ErrorKind::MalformedXML);
  CHECK(kind_of("<a><!-- open </a>") == ErrorKind::MalformedXML);
}

TEST_CASE("diagnostics carry a line number") {
  try {
    xml::parse("<a>\n<b>\n</a>");
    FAIL("expected error");
  } catch (const fasim::Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
