#include <gtest/gtest.h>

#include "lfp/checker.hpp"
#include "lfp/records.hpp"
#include "lfp/syntax.hpp"

using namespace lfp;

namespace {
Term P(const char* s) { return parse(s); }
}  // namespace

TEST(Records, Paths) {
  EXPECT_EQ(path_to_text({}), "-");
  EXPECT_EQ(path_to_text({Dir::Fun, Dir::Arg, Dir::Body}), "fun,arg,body");
  EXPECT_EQ(path_from_text("-"), Path{});
  EXPECT_EQ(path_from_text("fun,body"), (Path{Dir::Fun, Dir::Body}));
  EXPECT_THROW(path_from_text("left"), std::invalid_argument);
}

TEST(Records, TraceText) {
  Term t = P("(\\x.x x) (\\y.y)");
  auto r = normalize(t, RuleSet::beta(), 10);
  std::string s = render_trace(t, r, RuleSet::beta(), RecordFormat::Text);
  EXPECT_EQ(s,
            "lfp-trace\t1\n"
            "rule\tbeta\n"
            "start\t(\\x.x x) (\\y.y)\n"
            "step\t(\\x.x x) (\\y.y)\t-\tbeta\tfwd\t(\\y.y) (\\y.y)\n"
            "step\t(\\y.y) (\\y.y)\t-\tbeta\tfwd\t\\y.y\n"
            "result\tnormal\t\\y.y\n");
}

TEST(Records, TraceJsonLines) {
  Term t = P("(\\x.x) w");
  auto r = normalize(t, RuleSet::beta(), 10);
  std::string s = render_trace(t, r, RuleSet::beta(), RecordFormat::JsonLines);
  EXPECT_NE(s.find("{\"dir\":\"fwd\",\"from\":\"(\\\\x.x) w\",\"path\":[],\"record\":\"step\""), std::string::npos);
}

TEST(Records, CertificateRoundTrip) {
  CertifyResult r = certify_least(P("\\f.\\x.x"), P("\\x.x"), P("w"), {});
  ASSERT_TRUE(r.ok());
  for (RecordFormat fmt : {RecordFormat::Text, RecordFormat::JsonLines}) {
    std::string text = render_certificate(*r.certificate, fmt);
    LeastFixpointCertificate back = read_certificate(text);
    EXPECT_TRUE(verify_certificate(back).ok);
    EXPECT_EQ(render_certificate(back, fmt), text);
  }
}

TEST(Records, MalformedCertificates) {
  CertifyResult r = certify_least(P("\\f.\\x.x"), P("\\x.x"), P("w"), {});
  std::string text = render_certificate(*r.certificate, RecordFormat::Text);
  EXPECT_THROW(read_certificate(""), RecordError);
  EXPECT_THROW(read_certificate(text.substr(0, text.size() / 2)), RecordError);
  EXPECT_THROW(read_certificate(text + "step\tx\t-\tbeta\tfwd\tx\n"), RecordError);
  std::string bad_rule = text;
  bad_rule.replace(bad_rule.find("\tbeta\tfwd"), 5, "\tdelta");
  EXPECT_THROW(read_certificate(bad_rule), RecordError);
}

TEST(Records, LiftDump) {
  LiftResult r = lift_normalization(P("\\f.\\x.x"), Family::CurryY, P("y w"), "y", Base::Beta, 100, true);
  std::string dump = render_lift_dump(r);
  EXPECT_NE(dump.find("state\t0\t⟨υ:0⟩ w"), std::string::npos);
  EXPECT_NE(dump.find("descriptor\t0\t"), std::string::npos);
}
