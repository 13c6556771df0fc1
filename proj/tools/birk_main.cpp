// birk: facet enumeration for Birkhoff polytopes of finite matrix groups.
//
// Subcommands:
//   group NAME            build a group, print order and dimension
//   enumerate NAME        enumerate facet orbits, write an orbit database
//   verify NAME FILE      check an inequality matrix against a group
//   report DB             print the statistics tables of a database
//
// Exit codes: 0 success, 1 internal error, 2 usage or parse error,
// 3 data integrity error, 4 stopped at a cap with a checkpoint saved.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "birk/adj_decomp.hpp"
#include "birk/error.hpp"

using namespace birk;

namespace {

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

Mat read_matrix_file(const std::string& path, int dim) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open matrix file \"" + path + "\"");
    std::vector<std::vector<QuadExt>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream is(line);
        std::vector<QuadExt> row;
        std::string tok;
        while (is >> tok)
            row.push_back(QuadExt::parse(tok));
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != dim)
        throw ParseError("matrix file has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(dim));
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(rows[r].size()) != dim)
            throw ParseError("matrix row " + std::to_string(r + 1) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " +
                             std::to_string(dim));
        for (int c = 0; c < dim; ++c)
            m.at(r, c) = rows[r][c];
    }
    return m;
}

std::string group_summary(const MatGroup& g) {
    std::string s = "order " + std::to_string(g.order()) + ", dim " + std::to_string(g.dim);
    if (g.uses_quad_part())
        s += ", field Q(sqrt " + std::to_string(QuadExt::context_d()) + ")";
    return s;
}

int cmd_group(const std::string& name, bool dump_elements) {
    MatGroup g = coxeter_group(name);
    std::cout << group_summary(g) << "\n";
    if (dump_elements) {
        for (const Mat& m : g.elements) {
            for (int r = 0; r < m.rows; ++r) {
                for (int c = 0; c < m.cols; ++c)
                    std::cout << (c ? " " : "") << m.at(r, c).str();
                std::cout << "\n";
            }
            std::cout << "\n";
        }
    }
    return 0;
}

struct EnumerateOpts {
    std::string name;
    bool direct = false;
    int threads = 1;
    uint64_t seed = kDefaultSeed;
    int threshold = 0;
    bool no_early_termination = false;
    std::string checkpoint;
    long checkpoint_interval = 300;
    std::string resume;
    uint64_t max_steps = 0;
    std::string out;
    int transpose_mode = 0; // 0 auto, 1 force on, -1 force off
    bool json = false;
};

int cmd_enumerate(const EnumerateOpts& opt) {
    MatGroup g = coxeter_group(opt.name);

    OrbitDatabase db;
    bool resuming = !opt.resume.empty();
    if (resuming) {
        try {
            db = OrbitDatabase::load(opt.resume);
        } catch (const ParseError& e) {
            throw DataIntegrityError(e.what());
        }
        if (db.meta.group_name != opt.name)
            throw UsageError("checkpoint is for group " + db.meta.group_name + ", not " +
                             opt.name);
    }

    // On resume the run configuration comes from the checkpoint.
    bool use_transpose = resuming ? db.meta.use_transpose
                                  : (opt.transpose_mode == 0 ? g.closed_under_transpose()
                                                             : opt.transpose_mode > 0);
    VPolytope p = build_vpolytope(g);
    SymmetryGroup sym = symmetry_action(g, use_transpose);

    EnumerationConfig cfg;
    cfg.parallel_workers = opt.threads;
    cfg.seed = opt.seed;
    cfg.recursion_threshold = opt.threshold;
    cfg.early_termination = !opt.no_early_termination;
    cfg.checkpoint_interval = std::chrono::seconds(opt.checkpoint_interval);
    cfg.max_steps = opt.max_steps;

    const std::string out_path = opt.out.empty() ? opt.name + ".db" : opt.out;
    cfg.checkpoint_path = opt.checkpoint.empty() ? out_path : opt.checkpoint;

    if (resuming) {
        if (db.meta.sym_order != sym.order() ||
            db.meta.vertex_count != static_cast<int64_t>(g.order()))
            throw DataIntegrityError("checkpoint metadata does not match the rebuilt group");
        cfg.seed = db.meta.seed;
        cfg.recursion_threshold = db.meta.recursion_threshold;
    } else {
        db.meta.group_name = opt.name;
        db.meta.field_d = QuadExt::context_d();
        db.meta.mat_dim = g.dim;
        db.meta.ambient_dim = p.ambient_dim;
        db.meta.full_dim = p.full_dim;
        db.meta.vertex_count = static_cast<int64_t>(g.order());
        db.meta.sym_order = sym.order();
        db.meta.sym_kernel = sym.kernel_order();
        db.meta.use_transpose = use_transpose;
        db.meta.seed = cfg.seed;
        db.meta.recursion_threshold = cfg.recursion_threshold;
    }

    g_interrupted.store(false);
    std::signal(SIGINT, on_sigint);
    EnumStatus status;
    if (opt.direct) {
        run_direct_enumeration(p, sym, cfg, db);
        status = EnumStatus::complete;
    } else {
        status = run_adjacency_decomposition(p, sym, cfg, db,
                                             [] { return g_interrupted.load(); });
    }
    std::signal(SIGINT, SIG_DFL);

    if (status != EnumStatus::complete) {
        db.save(cfg.checkpoint_path);
        std::cerr << (status == EnumStatus::interrupted ? "interrupted" : "stopped at step cap")
                  << "; checkpoint saved to " << cfg.checkpoint_path << "\n";
        return 4;
    }

    db.save(out_path);
    Report rep = db.report();
    std::cout << (opt.json ? report_json_text(rep) : format_report_text(rep));
    std::cout << "database written to " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string& name, const std::string& matrix_path, const std::string& rhs) {
    MatGroup g = coxeter_group(name);
    Mat a = read_matrix_file(matrix_path, g.dim);
    QuadExt r = QuadExt::parse(rhs);
    VPolytope p = build_vpolytope(g);
    VerifyReport rep = verify_inequality(g, p, a, r);
    std::cout << "valid: " << (rep.valid ? "yes" : "no") << "\n";
    std::cout << "incidence: " << rep.incidence_count << "\n";
    std::cout << "facet: " << (rep.is_facet ? "yes" : "no") << "\n";
    std::cout << "rank: " << rep.rank_of_a << "\n";
    SymmetryGroup sym = symmetry_action(g, g.closed_under_transpose());
    Integer stab = sym.stabilizer_order(rep.incidence);
    std::cout << "stabilizer: " << stab.get_str() << "\n";
    // The action group has order 2|G|^2; pairs (z, z) over the center act
    // trivially, so the faithful symmetry group sees stabilizers this much
    // smaller.
    Integer faithful_stab = stab / sym.kernel_order();
    std::cout << "stabilizer (faithful action): " << faithful_stab.get_str() << "\n";
    return 0;
}

int cmd_report(const std::string& db_path, bool json, bool revalidate_keys) {
    OrbitDatabase db;
    try {
        db = OrbitDatabase::load(db_path);
    } catch (const ParseError& e) {
        throw DataIntegrityError(e.what());
    }
    if (revalidate_keys) {
        MatGroup g = coxeter_group(db.meta.group_name);
        VPolytope p = build_vpolytope(g);
        SymmetryGroup sym = symmetry_action(g, db.meta.use_transpose);
        if (sym.order() != db.meta.sym_order)
            throw DataIntegrityError("symmetry order mismatch on revalidation");
        for (const auto& [key, rec] : db.records()) {
            if (sym.canonical_image(key) != key)
                throw DataIntegrityError("stored key is not canonical");
            Facet f = facet_from_incidence(p, key);
            if (f.normal != rec.normal || !(f.rhs == rec.rhs))
                throw DataIntegrityError("stored representative mismatch");
            if (sym.stabilizer_order(key) != rec.stabilizer_order)
                throw DataIntegrityError("stored stabilizer order mismatch");
        }
    }
    Report rep = db.report();
    std::cout << (json ? report_json_text(rep) : format_report_text(rep));
    if (!db.meta.complete)
        std::cout << "note: database is a partial checkpoint (" << db.unprocessed_count()
                  << " orbits unprocessed)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"facet enumeration for Birkhoff polytopes of finite matrix groups"};
    app.require_subcommand(1);

    std::string group_name, matrix_path, rhs = "1", db_path;
    bool dump_elements = false, report_json = false, revalidate = false;
    EnumerateOpts eopt;

    CLI::App* c_group = app.add_subcommand("group", "build a group and print its order");
    c_group->add_option("name", group_name, "group name (A3, B4, D4, F4, H3, H4, I2_5, ...)")
        ->required();
    c_group->add_flag("--elements", dump_elements, "dump all elements as matrices");

    CLI::App* c_enum = app.add_subcommand("enumerate", "enumerate facet orbits");
    c_enum->add_option("name", eopt.name, "group name")->required();
    bool flag_adjacency = false;
    c_enum->add_flag("--direct", eopt.direct, "direct dual description (small groups only)");
    c_enum->add_flag("--adjacency", flag_adjacency, "adjacency decomposition (default)");
    c_enum->add_option("--threads", eopt.threads, "parallel workers")->check(CLI::Range(1, 256));
    c_enum->add_option("--seed", eopt.seed, "objective seed (default 1729)");
    c_enum->add_option("--threshold", eopt.threshold,
                       "recursion threshold (0 = auto: 4 x dimension)");
    c_enum->add_flag("--no-early-termination", eopt.no_early_termination,
                     "process every orbit even when completeness is already proven");
    c_enum->add_option("--checkpoint", eopt.checkpoint, "checkpoint file (default: output path)");
    c_enum->add_option("--checkpoint-interval", eopt.checkpoint_interval,
                       "seconds between periodic checkpoints");
    c_enum->add_option("--resume", eopt.resume, "resume from a checkpoint file");
    c_enum->add_option("--max-steps", eopt.max_steps,
                       "stop after this many processed orbits (exit 4 with checkpoint)");
    c_enum->add_option("--out", eopt.out, "output database path (default <name>.db)");
    bool t_on = false, t_off = false;
    c_enum->add_flag("--transpose", t_on, "force the transpose symmetry on");
    c_enum->add_flag("--no-transpose", t_off, "force the transpose symmetry off");
    c_enum->add_flag("--json", eopt.json, "print the report as JSON");

    CLI::App* c_verify = app.add_subcommand("verify", "verify an inequality matrix");
    c_verify->add_option("name", group_name, "group name")->required();
    c_verify->add_option("matrix", matrix_path, "matrix file: one row per line, entries like -3/2+1/2*sqrt(5)")
        ->required();
    c_verify->add_option("--rhs", rhs, "right-hand side (default 1)");

    CLI::App* c_report = app.add_subcommand("report", "print statistics of an orbit database");
    c_report->add_option("db", db_path, "database file")->required();
    c_report->add_flag("--json", report_json, "print as JSON");
    c_report->add_flag("--revalidate-keys", revalidate,
                       "rebuild the group and recheck canonical keys and representatives");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_group->parsed())
            return cmd_group(group_name, dump_elements);
        if (c_enum->parsed()) {
            if (eopt.direct && flag_adjacency)
                throw UsageError("--direct and --adjacency are mutually exclusive");
            if (t_on && t_off)
                throw UsageError("--transpose and --no-transpose are mutually exclusive");
            eopt.transpose_mode = t_on ? 1 : (t_off ? -1 : 0);
            return cmd_enumerate(eopt);
        }
        if (c_verify->parsed())
            return cmd_verify(group_name, matrix_path, rhs);
        if (c_report->parsed())
            return cmd_report(db_path, report_json, revalidate);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataIntegrityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
