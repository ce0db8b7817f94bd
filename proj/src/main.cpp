#include "cychom/input.hpp"
#include "cychom/report.hpp"
#include "cychom/sha256.hpp"
#include "cychom/thms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace cychom;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_error(const std::string& kind, const std::string& message,
                const std::string& path = {}, int line = 0, int col = 0) {
    nlohmann::ordered_json e;
    e["error"]["kind"] = kind;
    if (!path.empty()) e["error"]["path"] = path;
    if (line) e["error"]["line"] = line;
    if (col) e["error"]["col"] = col;
    e["error"]["message"] = message;
    std::cerr << e.dump() << "\n";
}

bool parse_range(const std::string& s, int& lo, int& hi) {
    try {
        size_t pos = s.find("..");
        if (pos == std::string::npos) {
            size_t used = 0;
            lo = hi = std::stoi(s, &used);
            return used == s.size();
        }
        size_t u1 = 0, u2 = 0;
        std::string a = s.substr(0, pos), b = s.substr(pos + 2);
        lo = std::stoi(a, &u1);
        hi = std::stoi(b, &u2);
        return !a.empty() && !b.empty() && u1 == a.size() && u2 == b.size();
    } catch (...) {
        return false;
    }
}

struct Range {
    int lo = 0;
    int hi = 0;
};

Range need_range(const std::string& what, const std::string& s) {
    Range r;
    if (!parse_range(s, r.lo, r.hi) || r.lo > r.hi)
        throw UsageError(what + " must be a range a..b, got '" + s + "'");
    return r;
}

struct LoadedInput {
    std::string path;
    std::string text;
    InputDocument doc;
};

LoadedInput load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    LoadedInput li;
    li.path = path;
    li.text = buf.str();
    li.doc = parse_input(li.text);
    if (li.doc.display_name().empty()) {
        std::string stem = std::filesystem::path(path).stem().string();
        li.doc.semifree.name = li.doc.finitedim.name = stem;
    }
    return li;
}

void write_out(const std::string& bytes, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << bytes;
}

struct ComplexSpec {
    std::string kind; /* CH, CC, Clambda, CN, CP, X, scX, Xtot */
    int n = 1;

    std::string str() const {
        if (kind == "X" || kind == "scX") return kind + ":" + std::to_string(n);
        return kind;
    }
};

ComplexSpec need_complex(const std::string& s) {
    ComplexSpec out;
    if (s == "CH" || s == "CC" || s == "Clambda" || s == "CN" || s == "CP" || s == "Xtot") {
        out.kind = s;
        return out;
    }
    auto tail = [&](size_t skip) {
        std::string t = s.substr(skip);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("complex '" + s + "' needs a count, e.g. X:2");
        out.n = std::stoi(t);
        if (out.n < 1) throw UsageError("the marked count in '" + s + "' must be >= 1");
    };
    if (s.rfind("scX:", 0) == 0) {
        out.kind = "scX";
        tail(4);
        return out;
    }
    if (s.rfind("X:", 0) == 0) {
        out.kind = "X";
        tail(2);
        return out;
    }
    throw UsageError("unknown complex '" + s +
                     "'; expected CH, CC, Clambda, CN, CP, X:n, scX:n or Xtot");
}

const SemiFreeAlgebra* as_semifree(const Algebra& a) {
    return dynamic_cast<const SemiFreeAlgebra*>(&a);
}

Complex build_complex(const Algebra& alg, const ComplexSpec& cs, int hodge_r, int w, int lo,
                      int hi) {
    const SemiFreeAlgebra* sf = as_semifree(alg);
    if ((cs.kind == "X" || cs.kind == "scX" || cs.kind == "Xtot") && !sf)
        throw UsageError("complex " + cs.str() + " needs a semifree presentation");
    if (cs.kind == "CH") return build_hochschild(alg, w, lo, hi).complex;
    if (cs.kind == "CC") return build_tower(alg, TowerKind::Cyclic, w, lo, hi).complex;
    if (cs.kind == "CN") return build_tower(alg, TowerKind::Negative, w, lo, hi).complex;
    if (cs.kind == "CP") return build_tower(alg, TowerKind::Periodic, w, lo, hi).complex;
    if (cs.kind == "Clambda") return build_connes(alg, w, lo, hi).complex;
    if (cs.kind == "X") return build_x(*sf, cs.n, w, lo, hi).complex;
    if (cs.kind == "scX") return build_sc(*sf, cs.n, w, lo, hi).complex;
    return build_hodge(*sf, w, hodge_r, lo, hi).complex;
}

/* Dimension table of one weight. Reduced tables cone off the same
 * complex over the unit presentation, so both sides are built one
 * degree wider to keep the requested window interior. */
std::vector<TableCell> homology_weight(const InputDocument& doc, const ComplexSpec& cs,
                                       bool reduced, int hodge_r, int w, int dlo, int dhi) {
    std::shared_ptr<Algebra> alg = make_algebra(doc);
    std::vector<TableCell> cells;
    int n_col = (cs.kind == "X" || cs.kind == "scX") ? cs.n : 0;
    int r_col = cs.kind == "Xtot" ? hodge_r : 0;
    if (!reduced) {
        Complex c = build_complex(*alg, cs, hodge_r, w, dlo, dhi);
        for (int d = dlo; d <= dhi; ++d)
            cells.push_back(TableCell{"H(" + c.name() + ")", w, d, n_col, r_col, c.homology(d)});
        return cells;
    }
    SemiFreeAlgebra unit{unit_presentation(alg->objects())};
    Complex full = build_complex(*alg, cs, hodge_r, w, dlo - 1, dhi);
    Complex unit_side = build_complex(unit, cs, hodge_r, w, dlo - 1, dhi);
    Complex red = reduced_cone(unit_side, full, "red(" + full.name() + ")");
    for (int d = dlo; d <= dhi; ++d)
        cells.push_back(TableCell{"H(" + red.name() + ")", w, d, n_col, r_col, red.homology(d)});
    return cells;
}

std::vector<TableCell> homology_weight_cached(const LoadedInput& li, const ComplexSpec& cs,
                                              bool reduced, int hodge_r, int w, int dlo,
                                              int dhi, bool use_cache) {
    std::string key = "cells-v1|" + sha256_hex(li.text) + "|" + cs.str() +
                      "|reduced=" + (reduced ? "1" : "0") + "|r=" + std::to_string(hodge_r) +
                      "|w=" + std::to_string(w) + "|d=" + std::to_string(dlo) + ".." +
                      std::to_string(dhi);
    if (use_cache) {
        if (std::optional<std::string> hit = cache_read(key)) {
            if (std::optional<std::vector<TableCell>> cells = cells_from_bytes(*hit))
                return *cells;
        }
    }
    std::vector<TableCell> cells = homology_weight(li.doc, cs, reduced, hodge_r, w, dlo, dhi);
    if (use_cache) cache_write(key, cells_to_bytes(cells));
    return cells;
}

std::string window_str(Range w, Range d) {
    return "w " + std::to_string(w.lo) + ".." + std::to_string(w.hi) + ", d " +
           std::to_string(d.lo) + ".." + std::to_string(d.hi);
}

/* The seven driver-visible checks. Checks are built on semifree
 * presentations; other inputs produce a skip with that reason. */
CheckReport run_check(const InputDocument& doc, const InputDocument* target,
                      const std::string& slug, Range wts, Range degs, Range ns, Range rs) {
    if (doc.kind != InputDocument::SemiFree) {
        CheckReport r;
        r.name = slug + "(" + doc.display_name() + ")";
        r.window = window_str(wts, degs);
        r.skipped = true;
        r.reason = "needs a semifree presentation";
        return r;
    }
    SemiFreeAlgebra a(doc.semifree);
    if (slug == "homotopy")
        return check_homotopy(a, ns.lo, ns.hi, wts.lo, wts.hi, degs.lo, degs.hi);
    if (slug == "pi-qiso")
        return check_pi_qiso(a, ns.lo, ns.hi, wts.lo, wts.hi, degs.lo, degs.hi);
    if (slug == "cone-iso") return check_cone_iso(a, wts.lo, wts.hi, degs.lo, degs.hi);
    if (slug == "master-diagram")
        return check_master_diagram(a, wts.lo, wts.hi, degs.lo, degs.hi);
    if (slug == "feigin-tsygan")
        return check_feigin_tsygan(a, wts.lo, wts.hi, degs.lo, degs.hi);
    if (slug == "sbi") return check_sbi(a, wts.lo, wts.hi, degs.lo, degs.hi);
    if (slug == "hodge") {
        std::shared_ptr<Algebra> tgt;
        if (target) tgt = make_algebra(*target);
        return check_hodge_theorem(a, tgt.get(), rs.lo, rs.hi, wts.lo, wts.hi, degs.lo,
                                   degs.hi);
    }
    throw UsageError("unknown check: " + slug);
}

long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

/* Runs tasks with bounded parallelism and collects results in task
 * order, so assembly does not depend on completion order. */
template <typename T>
std::vector<T> run_ordered(std::vector<std::function<T()>> tasks, int jobs) {
    std::vector<T> out;
    out.reserve(tasks.size());
    if (jobs <= 1) {
        for (auto& t : tasks) out.push_back(t());
        return out;
    }
    std::vector<std::future<T>> fut(tasks.size());
    size_t next = 0, done = 0;
    while (done < tasks.size()) {
        while (next < tasks.size() && next - done < static_cast<size_t>(jobs))
            fut[next] = std::async(std::launch::async, tasks[next]), ++next;
        out.push_back(fut[done].get());
        ++done;
    }
    return out;
}

int cmd_validate(const std::vector<std::string>& paths) {
    bool ok = true;
    for (const std::string& path : paths) {
        try {
            LoadedInput li = load(path);
            std::ostringstream line;
            line << li.doc.display_name() << ": ";
            if (li.doc.kind == InputDocument::SemiFree) {
                ValidationSummary s = validate(li.doc.semifree);
                line << "semifree, " << li.doc.semifree.objects.size() << " object"
                     << (li.doc.semifree.objects.size() == 1 ? "" : "s") << ", "
                     << li.doc.semifree.gens.size() << " generator"
                     << (li.doc.semifree.gens.size() == 1 ? "" : "s");
                if (s.cofibrant_verified) line << ", cofibrant verified";
                else if (s.cofibrant_asserted) line << ", cofibrant asserted";
                std::cout << line.str() << "\n";
                for (const std::string& n : s.notes) std::cout << "  note: " << n << "\n";
            } else {
                ValidationSummary s = validate(li.doc.finitedim);
                line << "finitedim, " << li.doc.finitedim.objects.size() << " object"
                     << (li.doc.finitedim.objects.size() == 1 ? "" : "s") << ", "
                     << li.doc.finitedim.basis.size() << " basis element"
                     << (li.doc.finitedim.basis.size() == 1 ? "" : "s");
                std::cout << line.str() << "\n";
                for (const std::string& n : s.notes) std::cout << "  note: " << n << "\n";
            }
        } catch (const ParseError& e) {
            std::cerr << path << ":" << e.line << ":" << e.col << ": error: "
                      << std::string(e.what()).substr(std::string(e.what()).find(": ") + 2)
                      << "\n";
            emit_error("parse", e.what(), path, e.line, e.col);
            ok = false;
        } catch (const std::exception& e) {
            std::cerr << path << ": error: " << e.what() << "\n";
            emit_error("validation", e.what(), path);
            ok = false;
        }
    }
    return ok ? 0 : 2;
}

struct EmitOptions {
    std::string format = "md";
    std::string out_path;
    bool gs = false;
    bool timings = false;
};

int emit_and_exit(Report& rep, const EmitOptions& eo) {
    sort_cells(rep.cells);
    rep.gs_grading = eo.gs;
    rep.with_timings = eo.timings;
    std::optional<ReportFormat> fmt = report_format_of(eo.format);
    if (!fmt) throw UsageError("unknown format '" + eo.format + "'; expected md, csv or json");
    write_out(emit_report(rep, *fmt), eo.out_path);
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for cyclic-type complexes of dg categories"};
    app.require_subcommand(1);

    /* validate */
    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and validate input files");
    std::vector<std::string> validate_paths;
    validate_cmd->add_option("inputs", validate_paths, "presentation files")->required();

    /* shared option storage */
    std::string input_path, target_path, weights_s, degrees_s, n_s, r_s;
    std::string complex_s, format_s = "md", out_path;
    bool reduced = false, gs = false, timings = false, no_cache = false;
    int hodge_r_single = 0, jobs = 1;

    auto add_common = [&](CLI::App* cmd, bool format_required) {
        cmd->add_option("input", input_path, "presentation file")->required();
        cmd->add_option("--weights", weights_s, "weight range a..b")->required();
        cmd->add_option("--degrees", degrees_s, "degree range a..b")->required();
        auto* f = cmd->add_option("--format", format_s, "md, csv or json");
        if (format_required) f->required();
        cmd->add_option("--out", out_path, "write the report to this file");
        cmd->add_option("--jobs", jobs, "parallel worker count")->check(CLI::PositiveNumber);
        cmd->add_flag("--gs-grading", gs, "relabel bigradings via p=2r, q=s-r");
        cmd->add_flag("--timings", timings, "include wall-clock stage timings");
    };

    /* homology */
    CLI::App* homology_cmd = app.add_subcommand("homology", "homology dimension tables");
    add_common(homology_cmd, false);
    homology_cmd->add_option("--complex", complex_s, "CH, CC, Clambda, CN, CP, X:n, scX:n, Xtot")
        ->required();
    homology_cmd->add_flag("--reduced", reduced, "cone off the unit inclusion first");
    homology_cmd->add_option("--hodge-r", hodge_r_single, "filtration start for Xtot");
    homology_cmd->add_flag("--no-cache", no_cache, "skip the on-disk table cache");

    /* check */
    CLI::App* check_cmd = app.add_subcommand("check", "run one verification");
    std::string check_name;
    check_cmd
        ->add_option("name", check_name,
                     "feigin-tsygan, pi-qiso, homotopy, master-diagram, cone-iso, hodge, sbi")
        ->required();
    add_common(check_cmd, false);
    check_cmd->add_option("--n", n_s, "marked count range (homotopy default 1..3, pi-qiso 2..3)");
    check_cmd->add_option("--hodge-r", r_s, "filtration range for hodge (default 1..2)");
    check_cmd->add_option("--target", target_path, "model presentation for hodge");

    /* report */
    CLI::App* report_cmd = app.add_subcommand("report", "run the full check suite");
    add_common(report_cmd, true);
    report_cmd->add_option("--target", target_path, "model presentation for hodge");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) {
            emit_error("usage", e.what());
            (void)app.exit(e);
            return 2;
        }
        return app.exit(e);
    }

    std::string active_path = input_path;
    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(validate_paths);

        LoadedInput li = load(input_path);
        Report rep;
        rep.input_name = li.doc.display_name();
        rep.input_sha256 = sha256_hex(li.text);
        EmitOptions eo{format_s, out_path, gs, timings};
        if (!report_format_of(format_s))
            throw UsageError("unknown format '" + format_s + "'; expected md, csv or json");
        Range wr = need_range("--weights", weights_s);
        Range dr = need_range("--degrees", degrees_s);
        if (wr.lo < 0) throw UsageError("weights must be nonnegative");

        if (app.got_subcommand(homology_cmd)) {
            ComplexSpec cs = need_complex(complex_s);
            if (hodge_r_single != 0 && cs.kind != "Xtot")
                throw UsageError("--hodge-r applies to --complex Xtot only");
            std::vector<std::function<std::pair<std::vector<TableCell>, long>()>> tasks;
            for (int w = wr.lo; w <= wr.hi; ++w)
                tasks.push_back([&, w]() {
                    auto t0 = std::chrono::steady_clock::now();
                    std::vector<TableCell> cells = homology_weight_cached(
                        li, cs, reduced, hodge_r_single, w, dr.lo, dr.hi, !no_cache);
                    return std::make_pair(std::move(cells), ms_since(t0));
                });
            auto parts = run_ordered(std::move(tasks), jobs);
            for (int w = wr.lo; w <= wr.hi; ++w) {
                auto& [cells, ms] = parts[w - wr.lo];
                rep.cells.insert(rep.cells.end(), cells.begin(), cells.end());
                rep.timings.push_back(StageTime{"homology w=" + std::to_string(w), ms});
            }
            return emit_and_exit(rep, eo);
        }

        /* check and report share the runner */
        std::unique_ptr<LoadedInput> target;
        if (!target_path.empty()) {
            active_path = target_path;
            target = std::make_unique<LoadedInput>(load(target_path));
            active_path = input_path;
        }
        Range nr{1, 3}, rr{1, 2};
        std::vector<std::string> slugs;
        if (app.got_subcommand(check_cmd)) {
            if (check_name == "pi-qiso") nr = Range{2, 3};
            if (!n_s.empty()) nr = need_range("--n", n_s);
            if (!r_s.empty()) rr = need_range("--hodge-r", r_s);
            slugs = {check_name};
        } else {
            slugs = {"homotopy", "pi-qiso",      "cone-iso", "master-diagram",
                     "feigin-tsygan", "hodge", "sbi"};
        }
        std::vector<std::function<std::pair<CheckReport, long>()>> tasks;
        for (const std::string& slug : slugs)
            tasks.push_back([&, slug]() {
                Range ns = nr;
                if (slug == "pi-qiso" && !app.got_subcommand(check_cmd)) ns = Range{2, 3};
                auto t0 = std::chrono::steady_clock::now();
                CheckReport r =
                    run_check(li.doc, target ? &target->doc : nullptr, slug, wr, dr, ns, rr);
                return std::make_pair(std::move(r), ms_since(t0));
            });
        auto results = run_ordered(std::move(tasks), jobs);
        for (size_t i = 0; i < results.size(); ++i) {
            auto& [r, ms] = results[i];
            for (TableCell& c : cells_of(r)) rep.cells.push_back(c);
            rep.checks.push_back(std::move(r));
            rep.timings.push_back(StageTime{slugs[i], ms});
        }
        return emit_and_exit(rep, eo);
    } catch (const ParseError& e) {
        emit_error("parse", e.what(), active_path, e.line, e.col);
        return 2;
    } catch (const UsageError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const ValidationError& e) {
        emit_error("validation", e.what(), active_path);
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 2;
    }
}
