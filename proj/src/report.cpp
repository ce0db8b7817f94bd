#include "cychom/report.hpp"

#include "cychom/sha256.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace cychom {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::optional<ReportFormat> report_format_of(const std::string& s) {
    if (s == "md" || s == "markdown") return ReportFormat::Markdown;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    return std::nullopt;
}

void sort_cells(std::vector<TableCell>& cells) {
    auto key = [](const TableCell& c) { return std::tie(c.table, c.w, c.d, c.n, c.r); };
    std::sort(cells.begin(), cells.end(),
              [&](const TableCell& a, const TableCell& b) { return key(a) < key(b); });
    std::vector<TableCell> out;
    for (const TableCell& c : cells) {
        if (!out.empty() && key(out.back()) == key(c)) {
            if (out.back().value != c.value)
                throw std::logic_error("conflicting dimensions for one table cell: " + c.table);
            continue;
        }
        out.push_back(c);
    }
    cells.swap(out);
}

std::vector<TableCell> cells_of(const CheckReport& c) {
    std::vector<TableCell> out;
    for (const DimCell& cell : c.cells)
        out.push_back(TableCell{cell.table, cell.w, cell.d, 0, 0, cell.value});
    return out;
}

std::pair<int, int> gs_labels(int n, int r) { return {2 * r, n - r}; }

namespace {

std::string verdict_of(const CheckReport& c) {
    if (c.skipped) return "skip";
    return c.pass ? "pass" : "fail";
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

std::string emit_markdown(const Report& r) {
    std::ostringstream out;
    out << "# cychom report\n\n";
    out << "- engine: " << r.engine << "\n";
    if (!r.input_name.empty()) out << "- input: " << r.input_name << "\n";
    if (!r.input_sha256.empty()) out << "- sha256: " << r.input_sha256 << "\n";
    out << "\n";

    if (!r.checks.empty()) {
        out << "## Checks\n\n";
        out << "| check | window | verdict | notes |\n";
        out << "| --- | --- | --- | --- |\n";
        for (const CheckReport& c : r.checks)
            out << "| " << md_escape(c.name) << " | " << md_escape(c.window) << " | "
                << verdict_of(c) << " | " << md_escape(c.reason) << " |\n";
        out << "\n";
        bool any = false;
        for (const CheckReport& c : r.checks) any = any || !c.witnesses.empty();
        if (any) {
            out << "### Witnesses\n\n";
            for (const CheckReport& c : r.checks)
                for (const std::string& w : c.witnesses)
                    out << "- " << c.name << ": " << w << "\n";
            out << "\n";
        }
    }

    if (!r.cells.empty()) {
        out << "## Homology\n\n";
        if (r.gs_grading) {
            out << "| complex | w | d | p | q | dim |\n";
            out << "| --- | --- | --- | --- | --- | --- |\n";
            for (const TableCell& c : r.cells) {
                auto [p, q] = gs_labels(c.n, c.r);
                out << "| " << md_escape(c.table) << " | " << c.w << " | " << c.d << " | " << p
                    << " | " << q << " | " << c.value << " |\n";
            }
        } else {
            out << "| complex | w | d | n | r | dim |\n";
            out << "| --- | --- | --- | --- | --- | --- |\n";
            for (const TableCell& c : r.cells)
                out << "| " << md_escape(c.table) << " | " << c.w << " | " << c.d << " | " << c.n
                    << " | " << c.r << " | " << c.value << " |\n";
        }
        out << "\n";
    }

    if (r.with_timings && !r.timings.empty()) {
        out << "## Timings\n\n";
        out << "| stage | ms |\n| --- | --- |\n";
        for (const StageTime& t : r.timings)
            out << "| " << md_escape(t.stage) << " | " << t.millis << " |\n";
        out << "\n";
    }
    return out.str();
}

std::string emit_csv(const Report& r) {
    std::ostringstream out;
    const char* bigrade = r.gs_grading ? "p,q" : "n,r";
    out << "type,name,w,d," << bigrade << ",value,detail\n";
    out << "meta,engine,,,,," << csv_quote(r.engine) << ",\n";
    if (!r.input_name.empty()) out << "meta,input,,,,," << csv_quote(r.input_name) << ",\n";
    if (!r.input_sha256.empty()) out << "meta,sha256,,,,," << r.input_sha256 << ",\n";
    for (const CheckReport& c : r.checks) {
        out << "check," << csv_quote(c.name) << ",,,,," << verdict_of(c) << ","
            << csv_quote(c.window + (c.reason.empty() ? "" : "; " + c.reason)) << "\n";
        for (const std::string& w : c.witnesses)
            out << "witness," << csv_quote(c.name) << ",,,,,," << csv_quote(w) << "\n";
    }
    for (const TableCell& c : r.cells) {
        int a = c.n, b = c.r;
        if (r.gs_grading) std::tie(a, b) = gs_labels(c.n, c.r);
        out << "cell," << csv_quote(c.table) << "," << c.w << "," << c.d << "," << a << "," << b
            << "," << c.value << ",\n";
    }
    if (r.with_timings)
        for (const StageTime& t : r.timings)
            out << "timing," << csv_quote(t.stage) << ",,,,," << t.millis << ",ms\n";
    return out.str();
}

std::string emit_json(const Report& r) {
    ordered_json doc;
    doc["version"] = 1;
    doc["engine"] = r.engine;
    doc["input"] = ordered_json{{"name", r.input_name}, {"sha256", r.input_sha256}};
    ordered_json checks = ordered_json::array();
    for (const CheckReport& c : r.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["window"] = c.window;
        jc["verdict"] = verdict_of(c);
        if (!c.reason.empty()) jc["reason"] = c.reason;
        jc["witnesses"] = c.witnesses;
        checks.push_back(std::move(jc));
    }
    doc["checks"] = std::move(checks);
    ordered_json cells = ordered_json::array();
    for (const TableCell& c : r.cells) {
        ordered_json jc;
        jc["complex"] = c.table;
        jc["w"] = c.w;
        jc["d"] = c.d;
        if (r.gs_grading) {
            auto [p, q] = gs_labels(c.n, c.r);
            jc["p"] = p;
            jc["q"] = q;
        } else {
            jc["n"] = c.n;
            jc["r"] = c.r;
        }
        jc["dim"] = c.value;
        cells.push_back(std::move(jc));
    }
    doc["cells"] = std::move(cells);
    if (r.with_timings) {
        ordered_json ts = ordered_json::array();
        for (const StageTime& t : r.timings)
            ts.push_back(ordered_json{{"stage", t.stage}, {"millis", t.millis}});
        doc["timings"] = std::move(ts);
    }
    return doc.dump(2) + "\n";
}

} // namespace

std::string emit_report(const Report& r, ReportFormat f) {
    switch (f) {
        case ReportFormat::Markdown: return emit_markdown(r);
        case ReportFormat::Csv: return emit_csv(r);
        case ReportFormat::Json: return emit_json(r);
    }
    return {};
}

std::string cache_directory() {
    if (const char* dir = std::getenv("CYCHOM_CACHE_DIR")) return dir;
    if (const char* home = std::getenv("HOME"))
        return (fs::path(home) / ".cache" / "cychom").string();
    return ".cychom-cache";
}

std::optional<std::string> cache_read(const std::string& key) {
    fs::path p = fs::path(cache_directory()) / (sha256_hex(key) + ".json");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void cache_write(const std::string& key, const std::string& bytes) {
    fs::path dir = cache_directory();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return;
    fs::path dest = dir / (sha256_hex(key) + ".json");
    fs::path tmp = dir / (sha256_hex(key) + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << bytes;
    }
    fs::rename(tmp, dest, ec);
    if (ec) fs::remove(tmp, ec);
}

std::string cells_to_bytes(const std::vector<TableCell>& cells) {
    ordered_json arr = ordered_json::array();
    for (const TableCell& c : cells)
        arr.push_back(ordered_json{{"complex", c.table},
                                   {"w", c.w},
                                   {"d", c.d},
                                   {"n", c.n},
                                   {"r", c.r},
                                   {"dim", c.value}});
    return arr.dump();
}

std::optional<std::vector<TableCell>> cells_from_bytes(const std::string& bytes) {
    ordered_json arr = ordered_json::parse(bytes, nullptr, false);
    if (arr.is_discarded() || !arr.is_array()) return std::nullopt;
    std::vector<TableCell> out;
    for (const auto& jc : arr) {
        if (!jc.is_object() || !jc.contains("complex") || !jc.contains("w") ||
            !jc.contains("d") || !jc.contains("n") || !jc.contains("r") || !jc.contains("dim"))
            return std::nullopt;
        TableCell c;
        c.table = jc["complex"].get<std::string>();
        c.w = jc["w"].get<int>();
        c.d = jc["d"].get<int>();
        c.n = jc["n"].get<int>();
        c.r = jc["r"].get<int>();
        c.value = jc["dim"].get<long>();
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace cychom
