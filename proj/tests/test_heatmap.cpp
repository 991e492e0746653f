#include <doctest.h>

#include "star/attack.hpp"
#include "star/detector.hpp"
#include "star/heatmap.hpp"

using namespace star;

TEST_CASE("bin breakpoints") {
    const double tau = 8.0;
    CHECK(heat_bin(0.0, tau) == 0);
    CHECK(heat_bin(1.0, tau) == 1);   // 0.125
    CHECK(heat_bin(2.0, tau) == 1);   // exactly 0.25
    CHECK(heat_bin(3.0, tau) == 2);
    CHECK(heat_bin(5.0, tau) == 3);
    CHECK(heat_bin(7.0, tau) == 4);
    CHECK(heat_bin(8.0, tau) == 4);   // exactly tau
    CHECK(heat_bin(9.0, tau) == 5);
    CHECK(heat_bin(0.5, 0.0) == 5);   // zero threshold: everything positive exceeds it
}

TEST_CASE("all-zero traces render uncolored") {
    TraceDoc doc;
    doc.id = "quiet";
    doc.tokens = {"a", "b", "c"};
    doc.trace.evidence = {0.0, 0.0, 0.0};
    doc.trace.cusum = {0.0, 0.0, 0.0};
    const std::string ansi = render_ansi(doc, 8.5);
    CHECK(ansi.find("\x1b[48;5;") == std::string::npos);
    CHECK(ansi.find("a b c") != std::string::npos);
}

TEST_CASE("rising g maps to nondecreasing bins") {
    TraceDoc doc;
    doc.id = "rising";
    const double tau = 4.0;
    for (int i = 0; i < 12; ++i) {
        doc.tokens.push_back("t" + std::to_string(i));
        doc.trace.evidence.push_back(0.0);
        doc.trace.cusum.push_back(0.5 * i);
    }
    int prev = -1;
    for (double g : doc.trace.cusum) {
        const int bin = heat_bin(g, tau);
        CHECK(bin >= prev);
        prev = bin;
    }
    const std::string html = render_html(std::vector<TraceDoc>{doc}, tau);
    CHECK(html.rfind("<!DOCTYPE html>", 0) == 0);
    CHECK(html.find("</html>") != std::string::npos);
    // Self-contained: no external fetches.
    CHECK(html.find("http://") == std::string::npos);
    CHECK(html.find("https://") == std::string::npos);
    CHECK(html.find("src=") == std::string::npos);
}

TEST_CASE("html escapes token text") {
    TraceDoc doc;
    doc.id = "esc<&>";
    doc.tokens = {"<script>"};
    doc.trace.evidence = {0.0};
    doc.trace.cusum = {0.0};
    const std::string html = render_html(std::vector<TraceDoc>{doc}, 8.5);
    CHECK(html.find("<script>") == std::string::npos);
    CHECK(html.find("&lt;script&gt;") != std::string::npos);
}

TEST_CASE("the hottest bin lands inside the planted run") {
    SynthSpec spec;
    spec.n_benign = 1;
    spec.n_attack = 3;
    spec.amplification = 3.0;
    spec.seed = 31;
    SynthResult result = synth_toy_corpus(spec);

    ToyLm lm(result.binding.toy);
    const std::string target = lm.vocab()[lm.target_symbol()];

    for (const LabeledSample& s : result.samples) {
        if (!s.is_attack) continue;
        DetectorConfig cfg;
        TraceDoc doc{s.id, s.tokens, score_sequence(s.records(), cfg)};

        std::size_t run_begin = s.tokens.size(), run_end = 0;
        for (std::size_t t = 0; t < s.tokens.size(); ++t) {
            if (s.tokens[t] == target) {
                run_begin = std::min(run_begin, t);
                run_end = t;
            }
        }
        std::size_t argmax = 0;
        for (std::size_t t = 1; t < doc.trace.cusum.size(); ++t) {
            if (doc.trace.cusum[t] > doc.trace.cusum[argmax]) argmax = t;
        }
        CHECK(argmax >= run_begin);
        CHECK(argmax <= run_end);

        // And the color ramp peaks there too.
        const int peak_bin = heat_bin(doc.trace.cusum[argmax], cfg.threshold_tau);
        CHECK(peak_bin == 5);
    }
}
