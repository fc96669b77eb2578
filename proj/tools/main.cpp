#include "esec/chain.hpp"
#include "esec/clustering.hpp"
#include "esec/config_io.hpp"
#include "esec/generator.hpp"
#include "esec/parallel.hpp"
#include "esec/predictor.hpp"
#include "esec/scene.hpp"
#include "esec/similarity.hpp"
#include "esec/table.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path; // flat key=value threshold file
    int jobs = 1;
    int debounce = 0;
    bool literal_roles = false;
    bool paper_literal_gc = false;
};

esec::BuildOptions build_options(const CommonOpts& c) {
    esec::BuildOptions opt;
    if (!c.config_path.empty()) esec::apply_config(opt, esec::read_flat_config(c.config_path));
    if (c.debounce > 0) opt.debounce = c.debounce;
    if (c.literal_roles) opt.literal_roles = true;
    if (c.paper_literal_gc) opt.dynamic_cfg.paper_literal_gc = true;
    return opt;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--config", c.config_path, "threshold config file (flat key = value)");
    cmd->add_option("--jobs", c.jobs, "worker threads (0 = hardware)")->capture_default_str();
    cmd->add_option("--debounce", c.debounce, "frames a new relation vector must persist");
    cmd->add_flag("--literal-roles", c.literal_roles, "use the verbal object numbering rule");
    cmd->add_flag("--paper-literal-gc", c.paper_literal_gc, "keep the literal getting-close inequality");
}

json options_json(const esec::BuildOptions& opt) {
    json j;
    j["eps_touch"] = opt.static_cfg.eps_touch;
    j["null_radius"] = opt.static_cfg.null_radius;
    j["around_radius"] = opt.static_cfg.around_radius;
    j["use_point_sets"] = opt.static_cfg.use_point_sets;
    j["window"] = opt.dynamic_cfg.window;
    j["xi"] = opt.dynamic_cfg.xi;
    j["stable_eps"] = opt.dynamic_cfg.stable_eps;
    j["far_threshold"] = opt.dynamic_cfg.far_threshold;
    j["move_eps"] = opt.dynamic_cfg.move_eps;
    j["paper_literal_gc"] = opt.dynamic_cfg.paper_literal_gc;
    j["debounce"] = opt.debounce;
    j["literal_roles"] = opt.literal_roles;
    return j;
}

// File-producing runs leave their effective configuration next to the
// primary output for provenance.
void write_sidecar(const std::string& primary_output, const json& effective) {
    if (primary_output.empty()) return;
    std::ofstream out(primary_output + ".config.json", std::ios::binary);
    if (out) out << effective.dump(2) << '\n';
}

std::vector<std::string> collect_inputs(const std::vector<std::string>& paths, const std::string& ext) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ext) found.push_back(e.path());
            std::sort(found.begin(), found.end());
            for (const auto& f : found) files.push_back(f.string());
        } else {
            files.push_back(p);
        }
    }
    if (files.empty()) throw std::runtime_error("no input files found");
    return files;
}

esec::Esec load_query(const std::string& path, const esec::BuildOptions& opt) {
    if (fs::path(path).extension() == ".jsonl") return esec::build_esec(esec::load_scene(path), opt);
    return esec::load_esec(path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-chain action encoding, similarity, prediction and two-agent chaining"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate synthetic action recordings");
    std::string gen_action = "hide", gen_out;
    bool gen_suite = false;
    int gen_variants = 30, gen_distractors = 0;
    std::uint64_t gen_seed = 1;
    CommonOpts gen_common;
    gen->add_option("--action", gen_action, "one of the ten scripted actions");
    gen->add_flag("--suite", gen_suite, "emit every action x variants into a directory");
    gen->add_option("--variants", gen_variants, "variants per action for --suite")->capture_default_str();
    gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();
    gen->add_option("--distractors", gen_distractors, "distractor count 0..3");
    gen->add_option("--out", gen_out, "output file (or directory for --suite)")->required();
    add_common(gen, gen_common);

    auto* extract = app.add_subcommand("extract", "build event-chain tables from scenes");
    std::vector<std::string> extract_in;
    std::string extract_out, extract_out_dir;
    CommonOpts extract_common;
    extract->add_option("scenes", extract_in, "scene files or directories")->required();
    extract->add_option("--out", extract_out, "output file for a single scene");
    extract->add_option("--out-dir", extract_out_dir, "output directory");
    add_common(extract, extract_common);

    auto* sim = app.add_subcommand("sim", "similarity percentage of two event chains");
    std::vector<std::string> sim_in;
    bool sim_normalize = false, sim_clamp = false;
    sim->add_option("tables", sim_in, "two event-chain JSON files")->expected(2);
    sim->add_flag("--normalize", sim_normalize, "bound the measure to [0, 100]");
    sim->add_flag("--clamp", sim_clamp, "clamp negative similarities to 0");

    auto* simmatrix = app.add_subcommand("simmatrix", "all-pairs similarity matrix CSV");
    std::vector<std::string> mat_in;
    std::string mat_out = "matrix.csv";
    bool mat_normalize = false;
    CommonOpts mat_common;
    simmatrix->add_option("tables", mat_in, "event-chain files or directories")->required();
    simmatrix->add_option("--out", mat_out, "output CSV")->capture_default_str();
    simmatrix->add_flag("--normalize", mat_normalize, "bound the measure to [0, 100]");
    add_common(simmatrix, mat_common);

    auto* cluster = app.add_subcommand("cluster", "agglomerative dendrogram from a similarity matrix");
    std::string clu_matrix, clu_out = "dendrogram.json", clu_linkage = "average";
    double clu_threshold = 0.5;
    cluster->add_option("--matrix", clu_matrix, "similarity matrix CSV")->required();
    cluster->add_option("--threshold", clu_threshold, "flat-cluster cut distance")->capture_default_str();
    cluster->add_option("--linkage", clu_linkage, "single|complete|average")->capture_default_str();
    cluster->add_option("--out", clu_out, "output JSON (newick written alongside)")->capture_default_str();

    auto* predict = app.add_subcommand("predict", "causal class prediction for one recording");
    std::string pred_library, pred_query;
    int pred_refs = 20, pred_persistence = 1;
    double pred_margin = 20.0;
    std::uint64_t pred_seed = 1;
    bool pred_sec = false;
    CommonOpts pred_common;
    predict->add_option("--library", pred_library, "directory of labeled event-chain JSON files")->required();
    predict->add_option("query", pred_query, "scene (*.jsonl) or event chain (*.json)")->required();
    predict->add_option("--refs-per-class", pred_refs, "sampled exemplars per class")->capture_default_str();
    predict->add_option("--margin", pred_margin, "similarity margin to call a class")->capture_default_str();
    predict->add_option("--persistence", pred_persistence, "columns the margin must hold");
    predict->add_option("--seed", pred_seed, "reference sampling seed")->capture_default_str();
    predict->add_flag("--sec", pred_sec, "use the touching sub-table only");
    add_common(predict, pred_common);

    auto* bench = app.add_subcommand("bench-predict", "leave-self-out prediction over a library");
    std::string bench_library, bench_out;
    int bench_refs = 20;
    double bench_margin = 20.0;
    std::uint64_t bench_seed = 1;
    bool bench_sec = false;
    CommonOpts bench_common;
    bench->add_option("--library", bench_library, "directory of labeled event-chain JSON files")->required();
    bench->add_option("--refs-per-class", bench_refs, "sampled exemplars per class")->capture_default_str();
    bench->add_option("--margin", bench_margin, "similarity margin")->capture_default_str();
    bench->add_option("--seed", bench_seed, "sampling seed")->capture_default_str();
    bench->add_flag("--sec", bench_sec, "use the touching sub-table only");
    bench->add_option("--out", bench_out, "per-class summary CSV");
    add_common(bench, bench_common);

    auto* chain = app.add_subcommand("chain", "two-agent interleaved schedule for one order");
    std::string chain_table, chain_order, chain_mode = "esec";
    chain->add_option("--table", chain_table, "timing table CSV")->required();
    chain->add_option("--order", chain_order, "comma-separated action order")->required();
    chain->add_option("--mode", chain_mode, "esec|sec|none")->capture_default_str();

    auto* chainmc = app.add_subcommand("chain-mc", "Monte-Carlo chaining over all orders");
    std::string mc_table, mc_mode = "esec", mc_prefix = "chain_mc";
    int mc_samples = 10000;
    std::uint64_t mc_seed = 1;
    bool mc_per_perm = false;
    CommonOpts mc_common;
    chainmc->add_option("--table", mc_table, "timing table CSV")->required();
    chainmc->add_option("--mode", mc_mode, "esec|sec|none")->capture_default_str();
    chainmc->add_option("--samples", mc_samples, "base realizations")->capture_default_str();
    chainmc->add_option("--seed", mc_seed, "sampling seed")->capture_default_str();
    chainmc->add_option("--out-prefix", mc_prefix, "output prefix for histogram/stats")->capture_default_str();
    chainmc->add_flag("--per-perm", mc_per_perm, "also write per-permutation means");
    add_common(chainmc, mc_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            json effective;
            effective["seed"] = gen_seed;
            if (gen_suite) {
                const auto files =
                    esec::generate_suite(esec::action_names(), gen_variants, gen_seed, gen_out, gen_common.jobs);
                effective["command"] = "gen --suite";
                effective["variants_per_action"] = gen_variants;
                write_sidecar((fs::path(gen_out) / "manifest.json").string(), effective);
                std::cout << "wrote " << files.size() << " scenes to " << gen_out << "\n";
                return 0;
            }
            esec::GenParams p;
            p.action = gen_action;
            p.seed = gen_seed;
            p.distractor_count = gen_distractors;
            esec::save_scene(esec::generate_scene(p), gen_out);
            effective["command"] = "gen";
            effective["action"] = gen_action;
            effective["distractors"] = gen_distractors;
            write_sidecar(gen_out, effective);
            std::cout << "wrote " << gen_out << "\n";
            return 0;
        }

        if (extract->parsed()) {
            const auto opt = build_options(extract_common);
            const auto files = collect_inputs(extract_in, ".jsonl");
            if (files.size() == 1 && !extract_out.empty()) {
                esec::save_esec(esec::build_esec(esec::load_scene(files[0]), opt), extract_out);
                write_sidecar(extract_out, options_json(opt));
                std::cout << "wrote " << extract_out << "\n";
                return 0;
            }
            if (extract_out_dir.empty()) throw std::runtime_error("multiple scenes need --out-dir");
            fs::create_directories(extract_out_dir);
            esec::parallel_for(files.size(), extract_common.jobs, [&](std::size_t i) {
                const fs::path src(files[i]);
                const fs::path dst = fs::path(extract_out_dir) / (src.stem().string() + ".json");
                esec::save_esec(esec::build_esec(esec::load_scene(src.string()), opt), dst.string());
            });
            write_sidecar((fs::path(extract_out_dir) / "extract").string(), options_json(opt));
            std::cout << "wrote " << files.size() << " event chains to " << extract_out_dir << "\n";
            return 0;
        }

        if (sim->parsed()) {
            esec::SimilarityConfig cfg;
            cfg.normalize = sim_normalize;
            cfg.clamp_nonnegative = sim_clamp;
            std::cout << esec::esec_similarity(esec::load_esec(sim_in[0]), esec::load_esec(sim_in[1]), cfg)
                      << "\n";
            return 0;
        }

        if (simmatrix->parsed()) {
            const auto files = collect_inputs(mat_in, ".json");
            std::vector<esec::Esec> items(files.size());
            std::vector<std::string> labels(files.size());
            esec::parallel_for(files.size(), mat_common.jobs, [&](std::size_t i) {
                items[i] = esec::load_esec(files[i]);
                labels[i] = fs::path(files[i]).stem().string();
            });
            esec::SimilarityConfig cfg;
            cfg.normalize = mat_normalize;
            const auto matrix = esec::similarity_matrix(items, labels, cfg, mat_common.jobs);
            esec::save_matrix(matrix, mat_out);
            json effective;
            effective["command"] = "simmatrix";
            effective["normalize"] = mat_normalize;
            effective["items"] = files.size();
            write_sidecar(mat_out, effective);
            std::cout << "wrote " << mat_out << " (" << matrix.size() << "x" << matrix.size() << ")\n";
            return 0;
        }

        if (cluster->parsed()) {
            esec::Linkage linkage = esec::Linkage::Average;
            if (clu_linkage == "single") linkage = esec::Linkage::Single;
            else if (clu_linkage == "complete") linkage = esec::Linkage::Complete;
            else if (clu_linkage != "average") throw std::invalid_argument("unknown linkage: " + clu_linkage);
            const auto dendro = esec::cluster_dendrogram(esec::load_matrix(clu_matrix), clu_threshold, linkage);
            std::ofstream out(clu_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + clu_out);
            out << esec::dendrogram_to_json(dendro) << '\n';
            const std::string newick_path = fs::path(clu_out).replace_extension(".newick").string();
            std::ofstream nw(newick_path, std::ios::binary);
            nw << esec::dendrogram_to_newick(dendro) << '\n';
            json effective;
            effective["command"] = "cluster";
            effective["threshold"] = clu_threshold;
            effective["linkage"] = clu_linkage;
            write_sidecar(clu_out, effective);
            std::cout << "wrote " << clu_out << " and " << newick_path << " (" << dendro.flat_clusters.size()
                      << " clusters at " << clu_threshold << ")\n";
            return 0;
        }

        if (predict->parsed()) {
            const auto opt = build_options(pred_common);
            esec::PredictorConfig cfg;
            cfg.refs_per_class = pred_refs;
            cfg.margin = pred_margin;
            cfg.seed = pred_seed;
            cfg.persistence = pred_persistence;
            cfg.use_sec = pred_sec;
            const auto lib = esec::load_library(pred_library);
            const auto query = load_query(pred_query, opt);
            const auto pred = esec::predict(query, lib, cfg);
            json j;
            j["label"] = query.label ? json(*query.label) : json(nullptr);
            j["predicted"] = pred.predicted ? json(*pred.predicted) : json(nullptr);
            j["column"] = pred.column;
            j["T"] = pred.T;
            j["Tot"] = pred.Tot;
            j["P"] = pred.P;
            json trace = json::array();
            for (const auto& tp : pred.trace) {
                json t;
                t["column"] = tp.column;
                t["t"] = tp.t;
                t["sims"] = tp.class_mean_sim;
                trace.push_back(t);
            }
            j["trace"] = trace;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (bench->parsed()) {
            esec::PredictorConfig cfg;
            cfg.refs_per_class = bench_refs;
            cfg.margin = bench_margin;
            cfg.seed = bench_seed;
            cfg.use_sec = bench_sec;
            const auto lib = esec::load_library(bench_library);
            const auto res = esec::bench_predict(lib, cfg, bench_common.jobs);
            std::ostringstream csv;
            csv << "class,mean_P,errors,total\n";
            for (const auto& [name, p] : res.mean_p_per_class) {
                const int errors = res.errors_per_class.count(name) ? res.errors_per_class.at(name) : 0;
                const int total = static_cast<int>(lib.classes.at(name).size());
                csv << name << ',' << p << ',' << errors << ',' << total << '\n';
                std::cout << name << ": mean P " << p << ", errors " << errors << "/" << total << "\n";
            }
            std::cout << "correct " << res.correct << "/" << res.total << "\n";
            for (const auto& [pair, n] : res.confusion)
                if (pair.first != pair.second)
                    std::cout << "confused " << pair.first << " -> " << pair.second << " x" << n << "\n";
            if (!bench_out.empty()) {
                std::ofstream out(bench_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot write " + bench_out);
                out << csv.str();
                json effective;
                effective["command"] = "bench-predict";
                effective["refs_per_class"] = bench_refs;
                effective["margin"] = bench_margin;
                effective["seed"] = bench_seed;
                effective["sec"] = bench_sec;
                write_sidecar(bench_out, effective);
            }
            return 0;
        }

        if (chain->parsed()) {
            const auto table = esec::load_timing_table(chain_table);
            const auto order = esec::resolve_order(table, chain_order);
            std::cout << esec::timeline_to_json(
                             esec::schedule_chain(table, order, esec::chain_mode_from_string(chain_mode)))
                      << "\n";
            return 0;
        }

        if (chainmc->parsed()) {
            const auto table = esec::load_timing_table(mc_table);
            const auto stats = esec::monte_carlo(table, esec::chain_mode_from_string(mc_mode), mc_samples,
                                                 mc_seed, mc_common.jobs, mc_per_perm);
            const std::string hist_path = mc_prefix + "_hist.csv";
            const std::string stats_path = mc_prefix + "_stats.json";
            std::ofstream hist(hist_path, std::ios::binary);
            if (!hist) throw std::runtime_error("cannot write " + hist_path);
            hist << esec::histogram_to_csv(stats);
            std::ofstream st(stats_path, std::ios::binary);
            st << esec::stats_to_json(stats) << '\n';
            if (mc_per_perm) {
                std::ofstream pp(mc_prefix + "_perms.csv", std::ios::binary);
                pp << "order,mean_completion\n";
                for (const auto& [perm, mean] : stats.per_permutation_mean) {
                    std::string name;
                    for (std::size_t i = 0; i < perm.size(); ++i) {
                        if (i) name += ' ';
                        name += table[static_cast<std::size_t>(perm[i])].name;
                    }
                    pp << name << ',' << mean << '\n';
                }
            }
            json effective;
            effective["command"] = "chain-mc";
            effective["mode"] = mc_mode;
            effective["samples"] = mc_samples;
            effective["seed"] = mc_seed;
            write_sidecar(stats_path, effective);
            std::cout << "cases " << stats.cases << ", mean " << stats.mean_completion << " s, sd "
                      << stats.sd_completion << " s, mean chain P " << stats.mean_p_chain << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
