#include <doctest.h>

#include <vector>

#include "icdoc/digest.hpp"
#include "icdoc/version.hpp"
#include "support.hpp"

using icdoc::Digest;
using icdoc::Version;

TEST_CASE("version parsing") {
    CHECK(Version::from_string("1.2").to_string() == "1.2");
    CHECK(Version::from_string("1.2.3").to_string() == "1.2.3");
    CHECK(Version::from_string("0.10").minor == 10);
    for (const char* bad : {"", "1", "1.", ".1", "1.2.3.4", "01.2", "1.02", "a.b", "1.2-rc1", " 1.2", "1..2"}) {
        CAPTURE(bad);
        CHECK_FALSE(Version::parse(bad));
    }
    CHECK_THROWS_AS(Version::from_string("x"), std::invalid_argument);
}

TEST_CASE("version order") {
    CHECK(Version::from_string("1.1") == Version::from_string("1.1.0"));
    CHECK(Version::from_string("1.1") < Version::from_string("1.1.1"));
    CHECK(Version::from_string("1.9") < Version::from_string("1.10"));
    CHECK(Version::from_string("2.0") > Version::from_string("1.99.99"));

    // Order agrees with the numeric triple and is transitive on random samples.
    std::vector<Version> vs;
    for (int i = 0; i < 200; ++i) {
        Version v{testing::uniform(0, 3), testing::uniform(0, 3), std::nullopt};
        if (testing::uniform(0, 1)) v.patch = testing::uniform(0, 2);
        vs.push_back(v);
    }
    for (const auto& a : vs) {
        CHECK(Version::from_string(a.to_string()) == a);
        for (const auto& b : vs) {
            auto ta = std::tuple(a.major, a.minor, a.patch.value_or(0));
            auto tb = std::tuple(b.major, b.minor, b.patch.value_or(0));
            CHECK(((a <=> b) < 0) == (ta < tb));
        }
    }
}

TEST_CASE("doc ids") {
    CHECK(icdoc::is_valid_doc_id("icd-a"));
    CHECK(icdoc::is_valid_doc_id("ICD_2"));
    CHECK_FALSE(icdoc::is_valid_doc_id(""));
    CHECK_FALSE(icdoc::is_valid_doc_id("2icd"));
    CHECK_FALSE(icdoc::is_valid_doc_id("icd a"));
    CHECK_FALSE(icdoc::is_valid_doc_id("icd/a"));
}

TEST_CASE("sha-256 test vectors") {
    CHECK(icdoc::digest(std::string_view("")).hex() ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(icdoc::digest(std::string_view("abc")).hex() ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(icdoc::digest(std::string_view("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")).hex() ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("digest forms") {
    auto d = icdoc::digest(std::string_view("abc"));
    CHECK(d.qualified() == "sha256:" + d.hex());
    CHECK(Digest::parse(d.hex()) == d);
    CHECK(Digest::parse(d.qualified()) == d);
    CHECK_FALSE(Digest::parse("sha256:1234"));
    CHECK_FALSE(Digest::parse("md5:" + d.hex()));
    CHECK_FALSE(Digest::parse(std::string(64, 'G')));
    std::string upper = d.hex();
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    CHECK_FALSE(Digest::parse(upper));
}

TEST_CASE("file digest equals content digest") {
    testing::TempDir dir;
    std::string content("binary\0data\n", 12);
    testing::spit(dir / "f.bin", content);
    CHECK(icdoc::digest_file((dir / "f.bin").string()) == icdoc::digest(std::string_view(content)));
    CHECK_THROWS(icdoc::digest_file((dir / "missing").string()));
}
