#include <doctest.h>

#include <random>

#include "dslink/openurl.hpp"
#include "dslink/url.hpp"

using namespace dslink;

TEST_CASE("settings link with a relative icon: the server url is pre-pended") {
    const PrefResult r = parse_pref_link(
        "http://adsabs.harvard.edu/cgi-bin/pref_set?4&OpenURL=http://lib.example/open&Icon=btn.gif");
    REQUIRE(get_settings(r) != nullptr);
    CHECK(get_settings(r)->server_url == "http://lib.example/open");
    CHECK(get_settings(r)->icon_url == std::string("http://lib.example/open/btn.gif"));
}

TEST_CASE("an icon given as a full url is kept as-is") {
    const PrefResult r = parse_pref_link(
        "http://adsabs.harvard.edu/cgi-bin/pref_set?4&OpenURL=http://lib.example/open&Icon=http://cdn.example/btn.gif");
    REQUIRE(get_settings(r) != nullptr);
    CHECK(get_settings(r)->icon_url == std::string("http://cdn.example/btn.gif"));
}

TEST_CASE("parameter names are case sensitive") {
    const PrefResult r = parse_pref_link(
        "http://adsabs.harvard.edu/cgi-bin/pref_set?4&openurl=http://lib.example/open");
    REQUIRE(get_pref_error(r) != nullptr);
    CHECK(get_pref_error(r)->kind == PrefErrorKind::MissingOpenURL);

    // OPENURL, OpenUrl etc. are equally unknown
    CHECK(get_pref_error(parse_pref_link("http://x/p?4&OPENURL=http://lib.example/open")) != nullptr);
    CHECK(get_pref_error(parse_pref_link("http://x/p?4&OpenUrl=http://lib.example/open")) != nullptr);
}

TEST_CASE("icon parameter is optional") {
    const PrefResult r = parse_pref_link("http://x/p?4&OpenURL=http://lib.example/open");
    REQUIRE(get_settings(r) != nullptr);
    CHECK_FALSE(get_settings(r)->icon_url.has_value());

    OpenUrlSettings settings;
    settings.server_url = "http://lib.example/open";
    const std::string link = build_pref_link(settings, "http://adsabs.harvard.edu");
    CHECK(link.find("Icon=") == std::string::npos);
    CHECK(link == "http://adsabs.harvard.edu/cgi-bin/pref_set?4&OpenURL=http%3A%2F%2Flib.example%2Fopen");
}

TEST_CASE("server url validation") {
    CHECK(get_pref_error(parse_pref_link("http://x/p?4&OpenURL=not-absolute"))->kind ==
          PrefErrorKind::BadServerUrl);
    CHECK(get_pref_error(parse_pref_link("http://x/p?4&OpenURL=ftp://files.example/x"))->kind ==
          PrefErrorKind::BadServerUrl);
    CHECK(get_pref_error(parse_pref_link("http://x/p"))->kind == PrefErrorKind::MissingOpenURL);
}

TEST_CASE("pre-pend fires exactly when the icon has no scheme") {
    const auto with_scheme = parse_pref_link("http://x/p?4&OpenURL=http://a.example/dir&Icon=https://b.example/i.gif");
    CHECK(get_settings(with_scheme)->icon_url == std::string("https://b.example/i.gif"));

    const auto path_absolute = parse_pref_link("http://x/p?4&OpenURL=http://a.example/dir&Icon=/i.gif");
    CHECK(get_settings(path_absolute)->icon_url == std::string("http://a.example/i.gif"));

    const auto relative = parse_pref_link("http://x/p?4&OpenURL=http://a.example/dir&Icon=i.gif");
    CHECK(get_settings(relative)->icon_url == std::string("http://a.example/dir/i.gif"));
}

TEST_CASE("build and parse round trip over generated settings") {
    std::mt19937 rng(1666);
    const char* hosts[] = {"lib.example", "openurl.university.edu", "sfx.inst.example"};
    for (int i = 0; i < 500; ++i) {
        OpenUrlSettings settings;
        settings.server_url = std::string("http://") + hosts[i % 3] +
                              (i % 5 == 0 ? ":" + std::to_string(1024 + i) : "") + "/menu" +
                              (i % 2 == 0 ? "/level" + std::to_string(i % 7) : "") +
                              (i % 4 == 0 ? "?inst=a&b=c d" : "");
        if (i % 3 != 2) {
            settings.icon_url = std::string("http://icons.example/") + std::to_string(i % 11) + "/btn.gif";
        }
        const std::string link = build_pref_link(settings, "http://adsabs.harvard.edu");
        const PrefResult r = parse_pref_link(link);
        REQUIRE_MESSAGE(get_settings(r) != nullptr, link);
        CHECK(*get_settings(r) == settings);
    }
}

TEST_CASE("a server url containing ampersands survives the round trip") {
    OpenUrlSettings settings;
    settings.server_url = "http://lib.example/open?vendor=x&profile=y";
    const std::string link = build_pref_link(settings, "http://adsabs.harvard.edu");
    CHECK(link.find("vendor=x&profile") == std::string::npos);  // must be encoded
    const PrefResult r = parse_pref_link(link);
    REQUIRE(get_settings(r) != nullptr);
    CHECK(get_settings(r)->server_url == settings.server_url);
}
