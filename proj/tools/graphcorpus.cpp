// graphcorpus: graph to instruction-corpus compiler.
//
//   graphcorpus ingest   --config run.json
//   graphcorpus describe --config run.json --dataset cora (--all | --node ID ...)
//   graphcorpus generate --config run.json
//   graphcorpus split    --config run.json
//   graphcorpus eval     --config run.json --task node_classification --dataset cora
//                        --predictions preds.jsonl

#include "graphcorpus/error.hpp"
#include "graphcorpus/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace gc = graphcorpus;

int main(int argc, char** argv) {
    CLI::App app{"Compile attributed graphs into instruction-tuning corpora"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<unsigned> threads;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "Pipeline config (JSON)")->required();
        sub->add_option("-j,--threads", threads, "Worker threads (overrides config)");
    };

    auto* ingest = app.add_subcommand("ingest", "Load graphs, report statistics and node energies");
    add_common(ingest);

    gc::DescribeRequest describe_req;
    auto* describe = app.add_subcommand("describe", "Write compact descriptions");
    add_common(describe);
    describe->add_option("-d,--dataset", describe_req.dataset, "Dataset name")->required();
    auto* node_opt = describe->add_option("-n,--node", describe_req.node_ids, "Node id (repeatable)");
    auto* all_opt = describe->add_flag("--all", describe_req.all, "Describe every node");
    node_opt->excludes(all_opt);

    auto* generate = app.add_subcommand("generate", "Build instruction packages");
    add_common(generate);

    auto* split = app.add_subcommand("split", "Write train/val/test corpora");
    add_common(split);

    gc::EvalRequest eval_req;
    std::string task_name;
    std::string gold_path, report_path;
    auto* eval = app.add_subcommand("eval", "Score predictions against gold answers");
    add_common(eval);
    eval->add_option("-t,--task", task_name, "Task name")->required();
    eval->add_option("-d,--dataset", eval_req.dataset, "Dataset name")->required();
    eval->add_option("-p,--predictions", eval_req.predictions, "Predictions JSONL {id, prediction}")
        ->required();
    eval->add_option("--gold", gold_path, "Gold JSONL {id, output}");
    eval->add_option("--report", report_path, "Report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : gc::exit_code(gc::ErrorKind::validation);
    }

    try {
        auto cfg = gc::PipelineConfig::load(config_path);
        if (threads) cfg.threads = std::max(1u, *threads);

        if (ingest->parsed()) {
            std::cout << gc::run_ingest(cfg);
        } else if (describe->parsed()) {
            const auto outcome = gc::run_describe(cfg, describe_req);
            for (const auto& f : outcome.failures) std::cerr << "error: " << f << "\n";
            std::cout << "wrote " << outcome.written << " descriptions to " << outcome.path.string()
                      << "\n";
            if (!outcome.failures.empty()) return gc::exit_code(gc::ErrorKind::runtime);
        } else if (generate->parsed()) {
            const auto outcome = gc::run_generate(cfg);
            for (const auto& [key, count] : outcome.plan.counts)
                std::cout << gc::to_string(key) << ": " << count << " packages\n";
            if (outcome.plan.uniform_fallback)
                std::cout << "note: all complexity weights were zero, packages split uniformly\n";
            std::cout << "wrote " << outcome.package_files << " package files, manifest "
                      << outcome.manifest.string() << "\n";
        } else if (split->parsed()) {
            std::cout << gc::run_split(cfg);
        } else if (eval->parsed()) {
            eval_req.task = gc::task_from_string(task_name);
            if (!gold_path.empty()) eval_req.gold = gold_path;
            if (!report_path.empty()) eval_req.report = report_path;
            std::cout << gc::run_eval(cfg, eval_req).dump(2) << "\n";
        }
    } catch (const gc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gc::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gc::exit_code(gc::ErrorKind::runtime);
    }
    return 0;
}
