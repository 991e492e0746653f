#include "star/heatmap.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "star/errors.hpp"

namespace star {

int heat_bin(double g, double tau) {
    if (!(g > 0.0)) return 0;
    if (tau <= 0.0) return 5; // any positive g exceeds a zero threshold
    const double ratio = g / tau;
    if (ratio <= 0.25) return 1;
    if (ratio <= 0.5) return 2;
    if (ratio <= 0.75) return 3;
    if (ratio <= 1.0) return 4;
    return 5;
}

namespace {

// Background colors, white through deep red (xterm-256 palette).
constexpr int kAnsiBg[6] = {255, 224, 217, 210, 203, 160};

const char* kCssBg[6] = {"#ffffff", "#ffe0e0", "#ffbcbc", "#ff9696", "#ff6b6b", "#d11a1a"};

std::string html_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

} // namespace

std::string render_ansi(const TraceDoc& doc, double tau) {
    if (doc.tokens.size() != doc.trace.cusum.size()) {
        throw error(errc::alignment_mismatch, "trace arrays disagree with token count",
                    std::min(doc.tokens.size(), doc.trace.cusum.size()));
    }
    std::ostringstream out;
    out << doc.id << "  score=" << doc.trace.decision_score
        << (doc.trace.flagged ? "  FLAGGED" : "");
    if (doc.trace.first_crossing) out << "  first_crossing=" << *doc.trace.first_crossing;
    out << "\n";
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        const int bin = heat_bin(doc.trace.cusum[i], tau);
        if (bin == 0) {
            out << doc.tokens[i];
        } else {
            out << "\x1b[48;5;" << kAnsiBg[bin] << "m" << (bin == 5 ? "\x1b[97m" : "\x1b[30m")
                << doc.tokens[i] << "\x1b[0m";
        }
        if (i + 1 < doc.tokens.size()) out << ' ';
    }
    out << "\n";
    return out.str();
}

std::string render_html(std::span<const TraceDoc> docs, double tau) {
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
        << "<title>suspicion heatmap</title>\n<style>\n"
        << "body{font-family:monospace;margin:2em;background:#fafafa;}\n"
        << ".seq{margin-bottom:1.5em;padding:0.8em;background:#fff;"
        << "border:1px solid #ddd;border-radius:4px;}\n"
        << ".meta{color:#555;margin-bottom:0.4em;}\n"
        << ".tok{padding:1px 3px;border-radius:2px;display:inline-block;margin:1px;}\n";
    for (int b = 0; b < 6; ++b) {
        out << ".b" << b << "{background:" << kCssBg[b] << ";"
            << (b == 5 ? "color:#fff;" : "") << "}\n";
    }
    out << ".legend span{margin-right:0.6em;}\n</style>\n</head>\n<body>\n";
    out << "<div class=\"legend\">threshold " << tau << ": ";
    const char* labels[6] = {"g = 0",   "g ≤ ¼τ", "g ≤ ½τ",
                             "g ≤ ¾τ", "g ≤ τ",   "g &gt; τ"};
    for (int b = 0; b < 6; ++b) {
        out << "<span class=\"tok b" << b << "\">" << labels[b] << "</span>";
    }
    out << "</div>\n";

    for (const TraceDoc& doc : docs) {
        if (doc.tokens.size() != doc.trace.cusum.size()) {
            throw error(errc::alignment_mismatch, "trace arrays disagree with token count",
                        std::min(doc.tokens.size(), doc.trace.cusum.size()));
        }
        out << "<div class=\"seq\">\n<div class=\"meta\">" << html_escape(doc.id)
            << " &mdash; score " << doc.trace.decision_score
            << (doc.trace.flagged ? " (flagged)" : "");
        if (doc.trace.first_crossing) {
            out << ", first crossing at token " << *doc.trace.first_crossing;
        }
        out << "</div>\n<div>";
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            out << "<span class=\"tok b" << heat_bin(doc.trace.cusum[i], tau) << "\" title=\"t="
                << i << " g=" << doc.trace.cusum[i] << " s=" << doc.trace.evidence[i] << "\">"
                << html_escape(doc.tokens[i]) << "</span>";
        }
        out << "</div>\n</div>\n";
    }
    out << "</body>\n</html>\n";
    return out.str();
}

} // namespace star
