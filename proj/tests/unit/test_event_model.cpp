#include <doctest.h>

#include "aris/errors.hpp"
#include "aris/event_model.hpp"
#include "helpers.hpp"

using namespace aris;

TEST_CASE("span_overlap is character Jaccard") {
    CHECK(span_overlap({"attached", 10, 18}, {"was attached", 6, 18}) == doctest::Approx(8.0 / 12.0));
    CHECK(span_overlap({"abcde", 0, 5}, {"abcde", 0, 5}) == 1.0);
    // half-open ranges that touch share nothing
    CHECK(span_overlap({"abcde", 0, 5}, {"fghi", 5, 9}) == 0.0);
    CHECK(span_overlap({"ab", 0, 2}, {"yz", 20, 22}) == 0.0);
}

TEST_CASE("span_overlap is symmetric") {
    Span a{"xxxxxx", 3, 9};
    Span b{"yyyy", 5, 9};
    CHECK(span_overlap(a, b) == span_overlap(b, a));
}

TEST_CASE("make_span validates") {
    CHECK(make_span("cat", 4, 7).length() == 3);
    CHECK_THROWS_AS(make_span("cat", 4, 8), ValidationError);
    CHECK_THROWS_AS(make_span("", 4, 4), ValidationError);
    CHECK_THROWS_AS(make_span("cat", 7, 4), ValidationError);
}

TEST_CASE("locate_span") {
    Document d("d", "the cat sat");
    auto s = locate_span(d, "cat");
    REQUIRE(s);
    CHECK(*s == Span{"cat", 4, 7});

    Document twice("d", "aa aa");
    auto second = locate_span(twice, "aa", 3);
    REQUIRE(second);
    CHECK(*second == Span{"aa", 3, 5});

    CHECK_FALSE(locate_span(Document("d", "abc"), "xyz"));
}

TEST_CASE("offsets count code points") {
    Document d = testing::gandhi_doc(false);
    auto s = locate_span(d, "historic");
    REQUIRE(s);
    CHECK(d.slice(s->start, s->end) == "historic");
    CHECK(utf8_length("India\xE2\x80\x99s") == 7);
    CHECK(d.length() == utf8_length(d.text()));
    CHECK(d.contains(*s));
    CHECK_FALSE(d.contains(Span{"historic", s->start + 1, s->end + 1}));
}

TEST_CASE("canonical_key") {
    Document d("d", "the cat saw a dog and a bird");
    EventMention e{{"cat", 4, 7}, "T", {}};
    auto k = canonical_key(e);
    CHECK(k.trigger_start == 4);
    CHECK(k.trigger_end == 7);
    CHECK(k.event_type == "T");
    CHECK(k.argument_keys.empty());

    EventMention a{{"cat", 4, 7}, "T", {{{"dog", 14, 17}, "X"}, {{"bird", 24, 28}, "Y"}}};
    EventMention b{{"cat", 4, 7}, "T", {{{"bird", 24, 28}, "Y"}, {{"dog", 14, 17}, "X"}}};
    CHECK(canonical_key(a) == canonical_key(b));

    EventMention c = a;
    c.arguments[0].role = "Z";
    CHECK(canonical_key(a) != canonical_key(c));
}

TEST_CASE("normalize sorts and collapses arguments") {
    EventMention e{{"cat", 4, 7}, "T", {{{"dog", 14, 17}, "X"}, {{"a", 12, 13}, "Y"}, {{"dog", 14, 17}, "X"}}};
    normalize(e);
    REQUIRE(e.arguments.size() == 2);
    CHECK(e.arguments[0].span.start == 12);
    CHECK(e.arguments[1].span.text == "dog");
}

TEST_CASE("position_less orders by trigger start") {
    EventMention a{{"cat", 4, 7}, "T", {}};
    EventMention b{{"saw", 8, 11}, "A", {}};
    CHECK(position_less(a, b));
    CHECK_FALSE(position_less(b, a));
}
