/*
   Copyright 2026 The pgen Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "pgen/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "pgen/blockcount.hpp"
#include "pgen/bounds.hpp"
#include "pgen/error.hpp"
#include "pgen/mltest.hpp"
#include "pgen/rng.hpp"
#include "pgen/stats.hpp"
#include "pgen/synth.hpp"

namespace pgen {

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        auto v = std::stoull(value, &used, 0);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw_usage("invalid value for " + key + ": '" + value + "'");
    }
}

unsigned parse_unsigned(const std::string& key, const std::string& value) {
    auto v = parse_u64(key, value);
    if (v > 0xffffffffu) throw_usage("value for " + key + " too large: " + value);
    return static_cast<unsigned>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw_usage("invalid boolean for " + key + ": '" + value + "'");
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Runs fn(0..n-1) on up to `threads` workers. Each index writes only its
// own output slot, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(n, 1))));
    if (threads == 1) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::uint64_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Json coc_json(const CountsOfCounts& coc) {
    Json arr = Json::array();
    for (const auto& [i, n] : coc.table()) arr.push_back({i, n});
    return arr;
}

CountOptions count_options(const ExperimentConfig& c) {
    CountOptions o;
    o.dense_cell_cap = c.mem_cap;
    return o;
}

IntervalUnion config_set(const ExperimentConfig& c) {
    return c.s ? IntervalUnion::parse(*c.s) : IntervalUnion::prefix(Rational(1));
}

Json report_header(const ExperimentConfig& c) {
    Json j;
    j["tool"] = "pgen";
    j["version"] = kToolVersion;
    j["command"] = c.command;
    j["config"] = config_echo(c);
    return j;
}

void require_ks(const ExperimentConfig& c) {
    if (c.ks.empty()) throw_usage(c.command + " needs --k or --k-range");
}

void require_lambdas(const ExperimentConfig& c) {
    if (c.lambdas.empty()) throw_usage(c.command + " needs a non-empty --lambda list");
}

void require_replicates(const ExperimentConfig& c) {
    if (c.replicates < 2) throw_usage(c.command + " needs --reps >= 2");
    std::set<std::uint64_t> seeds;
    for (std::uint64_t r = 0; r < c.replicates; ++r) {
        if (!seeds.insert(replicate_seed(c.master_seed, r)).second) {
            throw_usage("replicate seeds collide at replicate " + std::to_string(r));
        }
    }
}

}  // namespace

//---------------------------------------------------------------------------//
// Configuration
//---------------------------------------------------------------------------//

std::vector<unsigned> parse_k_list(const std::string& text) {
    std::vector<unsigned> ks;
    std::string t = trim(text);
    for (const char* sep : {"..", "-"}) {
        auto at = t.find(sep);
        if (at != std::string::npos && at > 0) {
            unsigned lo = parse_unsigned("k-range", trim(t.substr(0, at)));
            unsigned hi = parse_unsigned("k-range", trim(t.substr(at + std::strlen(sep))));
            if (hi < lo) throw_usage("empty k range '" + text + "'");
            for (unsigned k = lo; k <= hi; ++k) ks.push_back(k);
            return ks;
        }
    }
    std::stringstream ss(t);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) ks.push_back(parse_unsigned("k", item));
    }
    for (unsigned k : ks) {
        if (k < 1) throw_usage("k must be >= 1");
    }
    return ks;
}

std::vector<Rational> parse_lambda_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (item.empty()) continue;
        Rational r = Rational::parse(item);
        if (!r.is_positive()) throw_usage("lambda must be positive: '" + item + "'");
        out.push_back(r);
    }
    return out;
}

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "source", "path",     "format",     "b",          "seed",      "k",         "k-range",
        "lambda", "S",        "i",          "i-max",      "i-cap",     "reps",      "master-seed",
        "threads", "mem-cap", "max-prefix", "max-words",  "m",         "len",       "k-window",
        "beam",   "out",      "out-dir",    "timing"};
    return keys;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "source") {
        static const std::set<std::string> known = {"iid", "champernowne", "fibonacci",
                                                    "thue-morse-squares", "rudin-shapiro-squares",
                                                    "file"};
        if (!known.count(value)) throw_usage("unknown source '" + value + "'");
        c.source = value;
    } else if (key == "path") {
        c.path = value;
    } else if (key == "format") {
        parse_format(value);
        c.format = value;
    } else if (key == "b") {
        c.b = Alphabet(parse_unsigned(key, value)).size();
    } else if (key == "seed") {
        c.seed = parse_u64(key, value);
    } else if (key == "k" || key == "k-range") {
        c.ks = parse_k_list(value);
    } else if (key == "lambda") {
        c.lambdas = parse_lambda_list(value);
    } else if (key == "S") {
        IntervalUnion::parse(value);
        c.s = value;
    } else if (key == "i") {
        c.i = parse_u64(key, value);
    } else if (key == "i-max") {
        c.i_max = parse_u64(key, value);
    } else if (key == "i-cap") {
        c.i_cap = parse_unsigned(key, value);
    } else if (key == "reps") {
        c.replicates = parse_u64(key, value);
    } else if (key == "master-seed") {
        c.master_seed = parse_u64(key, value);
    } else if (key == "threads") {
        c.threads = std::max(1u, parse_unsigned(key, value));
    } else if (key == "mem-cap") {
        c.mem_cap = parse_u64(key, value);
    } else if (key == "max-prefix") {
        c.max_prefix = parse_u64(key, value);
    } else if (key == "max-words") {
        c.max_words = parse_u64(key, value);
    } else if (key == "m") {
        c.m = parse_unsigned(key, value);
    } else if (key == "len") {
        c.len = parse_u64(key, value);
    } else if (key == "k-window") {
        auto ks = parse_k_list(value);
        if (ks.empty()) throw_usage("empty k-window");
        c.k_lo = ks.front();
        c.k_hi = ks.back();
    } else if (key == "beam") {
        c.beam = parse_unsigned(key, value);
    } else if (key == "out") {
        c.out = value;
    } else if (key == "out-dir") {
        c.out_dir = value;
    } else if (key == "timing") {
        c.timing = parse_bool(key, value);
    } else {
        throw_usage("unknown setting '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw_usage("cannot read config file '" + path.string() + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    for (int lineno = 1; std::getline(f, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw_usage(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

Json config_echo(const ExperimentConfig& c) {
    Json j;
    j["source"] = c.source;
    if (c.path) j["path"] = *c.path;
    j["format"] = c.format;
    j["b"] = c.b;
    j["seed"] = c.seed;
    j["k"] = c.ks;
    Json lambdas = Json::array();
    for (const auto& l : c.lambdas) lambdas.push_back(l.str());
    j["lambda"] = lambdas;
    j["S"] = c.s ? config_set(c).str() : std::string("(0/1,1/1]");
    j["i"] = c.i;
    if (c.i_max) j["i_max"] = *c.i_max;
    j["i_cap"] = c.i_cap;
    j["reps"] = c.replicates;
    j["master_seed"] = c.master_seed;
    j["mem_cap"] = c.mem_cap;
    j["max_prefix"] = c.max_prefix;
    j["max_words"] = c.max_words;
    if (c.m) j["m"] = *c.m;
    j["len"] = c.len;
    j["k_window"] = std::to_string(c.k_lo) + ".." + std::to_string(c.k_hi);
    j["beam"] = c.beam;
    if (c.out) j["out"] = *c.out;
    return j;
}

std::unique_ptr<SymbolSource> make_source(const ExperimentConfig& c) {
    Alphabet a(c.b);
    if (c.source == "iid") return iid_uniform_source(a, c.seed);
    if (c.source == "champernowne") return champernowne_source(a);
    if (c.source == "fibonacci") return fibonacci_concat_source(a);
    if (c.source == "thue-morse-squares" || c.source == "rudin-shapiro-squares") {
        if (c.b != 2) throw_usage(c.source + " is binary; use --b 2");
        bool tm = c.source == "thue-morse-squares";
        return along_squares(tm ? TermFunction(thue_morse_term) : TermFunction(rudin_shapiro_term),
                             a, c.source);
    }
    if (c.source == "file") {
        if (!c.path) throw_usage("source 'file' needs --path");
        return file_source(*c.path, a, parse_format(c.format));
    }
    throw_usage("unknown source '" + c.source + "'");
}

//---------------------------------------------------------------------------//
// Commands
//---------------------------------------------------------------------------//

ExperimentReport cmd_analyze(const ExperimentConfig& c) {
    require_ks(c);
    require_lambdas(c);
    auto source = make_source(c);
    std::vector<Rational> sorted = c.lambdas;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    ExperimentReport rep;
    rep.json = report_header(c);
    rep.json["source_id"] = source->id();
    Json results = Json::array();
    std::ostringstream csv;
    csv << "k,lambda,i,z_empirical,poisson_pmf,abs_err,tv_distance\n";

    for (unsigned k : c.ks) {
        const std::uint64_t words = word_space(c.b, k);
        const std::uint64_t needed = lambda_threshold(sorted.back(), words) + k - 1;
        if (needed > c.max_prefix) {
            throw_resource("analyze at k=" + std::to_string(k) + ", lambda=" + sorted.back().str() +
                           " requires a prefix of " + std::to_string(needed) +
                           " symbols, above --max-prefix " + std::to_string(c.max_prefix));
        }
        auto snaps = incremental_lambda_sweep(*source, k, sorted, count_options(c));
        for (const auto& lambda : c.lambdas) {
            auto idx = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), lambda) - sorted.begin());
            const CountsOfCounts& coc = snaps[idx];
            EmpiricalLaw e = EmpiricalLaw::from(coc);
            PoissonLaw p(lambda);
            const double tv = tv_distance(e, p);
            const std::uint64_t i_hi = c.i_max ? *c.i_max : std::max<std::uint64_t>(8, e.support_max());
            const Deviation sup = sup_deviation(e, p, 0, i_hi);
            const double threshold = 2.0 / k;

            Json entry;
            entry["k"] = k;
            entry["lambda"] = lambda.str();
            entry["positions"] = coc.positions();
            entry["prefix_length"] = lambda_threshold(lambda, words) + k - 1;
            entry["tv_distance"] = tv;
            entry["sup_deviation"] = {{"i", sup.i}, {"value", sup.value}};
            entry["threshold"] = threshold;
            entry["exceeds_threshold"] = sup.value > threshold;
            entry["counts_of_counts"] = coc_json(coc);
            Json rows = Json::array();
            for (std::uint64_t i = 0; i <= i_hi; ++i) {
                const double z = e.prob(i);
                const double pmf = p.pmf(i);
                rows.push_back({{"i", i},
                                {"z_empirical", z},
                                {"z_exact", e.exact(i).str()},
                                {"poisson_pmf", pmf},
                                {"abs_err", std::abs(z - pmf)}});
                csv << k << ',' << lambda.str() << ',' << i << ',' << fmt_double(z) << ','
                    << fmt_double(pmf) << ',' << fmt_double(std::abs(z - pmf)) << ','
                    << fmt_double(tv) << '\n';
            }
            entry["rows"] = rows;
            results.push_back(entry);
        }
    }
    rep.json["results"] = results;
    rep.csv = csv.str();
    return rep;
}

ExperimentReport cmd_sweep(const ExperimentConfig& c) {
    require_ks(c);
    require_lambdas(c);
    auto source = make_source(c);
    std::vector<Rational> sorted = c.lambdas;
    std::sort(sorted.begin(), sorted.end());

    ExperimentReport rep;
    rep.json = report_header(c);
    rep.json["source_id"] = source->id();
    Json results = Json::array();
    std::ostringstream csv;
    csv << "k,lambda,i,words\n";
    for (unsigned k : c.ks) {
        auto snaps = incremental_lambda_sweep(*source, k, sorted, count_options(c));
        for (std::size_t t = 0; t < sorted.size(); ++t) {
            results.push_back({{"k", k},
                               {"lambda", sorted[t].str()},
                               {"positions", snaps[t].positions()},
                               {"counts_of_counts", coc_json(snaps[t])}});
            for (const auto& [i, n] : snaps[t].table()) {
                csv << k << ',' << sorted[t].str() << ',' << i << ',' << n << '\n';
            }
        }
    }
    rep.json["results"] = results;
    rep.csv = csv.str();
    return rep;
}

ExperimentReport cmd_mc_quenched(const ExperimentConfig& c) {
    require_ks(c);
    require_replicates(c);
    const IntervalUnion s = config_set(c);
    const Rational measure = s.measure();
    ExperimentReport rep;
    rep.json = report_header(c);
    Json results = Json::array();
    std::ostringstream csv;
    csv << "k,replicate,seed,words_with_i,f\n";

    for (unsigned k : c.ks) {
        const std::uint64_t words = word_space(c.b, k);
        const PositionSet positions = positions_from_interval_union(s, c.b, k);
        std::vector<std::uint64_t> hits(c.replicates);
        parallel_for(c.replicates, c.threads, [&](std::uint64_t r) {
            auto src = iid_uniform_source(Alphabet(c.b), replicate_seed(c.master_seed, r));
            hits[r] = counts_of_counts(count_blocks(*src, k, positions, count_options(c))).at(c.i);
        });

        uint128 total = 0;
        for (auto h : hits) total += h;
        const long double mean = static_cast<long double>(total) /
                                 (static_cast<long double>(words) * c.replicates);
        const double t = 1.0 / k;
        std::uint64_t violations = 0;
        Json reps = Json::array();
        for (std::uint64_t r = 0; r < c.replicates; ++r) {
            const double f = static_cast<double>(hits[r]) / static_cast<double>(words);
            if (std::abs(static_cast<long double>(f) - mean) > t) ++violations;
            reps.push_back({{"replicate", r}, {"seed", replicate_seed(c.master_seed, r)},
                            {"words_with_i", hits[r]}, {"f", f}});
            csv << k << ',' << r << ',' << replicate_seed(c.master_seed, r) << ',' << hits[r] << ','
                << fmt_double(f) << '\n';
        }
        const QuenchedParameters qp = quenched_parameters(measure, s.size(), c.b, k);
        const double bound = mcdiarmid_bound(qp.n, qp.c, qp.t);
        const double fraction = static_cast<double>(violations) / static_cast<double>(c.replicates);
        const double band = bound + 3.0 * std::sqrt(bound / static_cast<double>(c.replicates));
        results.push_back({{"k", k},
                           {"i", c.i},
                           {"positions", positions.total()},
                           {"mean_f", static_cast<double>(mean)},
                           {"t", t},
                           {"violations", violations},
                           {"violation_fraction", fraction},
                           {"mcdiarmid", {{"N", qp.n}, {"c", qp.c}, {"t", qp.t}, {"bound", bound}}},
                           {"series_term", quenched_series_term(measure, s.size(), c.b, k)},
                           {"band", band},
                           {"within_band", fraction <= band},
                           {"replicates", reps}});
    }
    rep.json["results"] = results;
    rep.csv = csv.str();
    return rep;
}

ExperimentReport cmd_mc_annealed(const ExperimentConfig& c) {
    require_ks(c);
    require_replicates(c);
    const IntervalUnion s = config_set(c);
    const Rational measure = s.measure();
    ExperimentReport rep;
    rep.json = report_header(c);
    Json results = Json::array();
    std::ostringstream csv;
    csv << "k,i,mean_law,poisson_pmf,abs_err\n";

    for (unsigned k : c.ks) {
        const std::uint64_t words = word_space(c.b, k);
        const PositionSet positions = positions_from_interval_union(s, c.b, k);
        std::vector<std::map<std::uint64_t, std::uint64_t>> tables(c.replicates);
        parallel_for(c.replicates, c.threads, [&](std::uint64_t r) {
            auto src = iid_uniform_source(Alphabet(c.b), replicate_seed(c.master_seed, r));
            tables[r] = counts_of_counts(count_blocks(*src, k, positions, count_options(c))).table();
        });

        std::map<std::uint64_t, std::uint64_t> pooled;
        for (const auto& t : tables) {
            for (const auto& [i, n] : t) pooled[i] += n;
        }
        const std::uint64_t denom = words * c.replicates;
        EmpiricalLaw law(denom, pooled);
        PoissonLaw p(measure);
        const double tv = tv_distance(law, p);
        const double bound = janson_tv_bound(measure, s.size(), c.b, k);

        // Sampling band: half the summed 3-sigma standard errors of the
        // per-replicate probabilities.
        double band = 0.0;
        const double reps = static_cast<double>(c.replicates);
        for (const auto& [i, n] : pooled) {
            double mean = static_cast<double>(n) / static_cast<double>(denom);
            double ss = 0.0;
            for (const auto& t : tables) {
                auto it = t.find(i);
                double f = it == t.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(words);
                ss += (f - mean) * (f - mean);
            }
            band += 0.5 * 3.0 * std::sqrt(ss / (reps - 1.0) / reps);
        }

        Json law_rows = Json::array();
        const std::uint64_t i_hi = std::max<std::uint64_t>(8, law.support_max());
        for (std::uint64_t i = 0; i <= i_hi; ++i) {
            const double e = law.prob(i);
            const double pmf = p.pmf(i);
            law_rows.push_back({{"i", i}, {"mean_law", e}, {"poisson_pmf", pmf}, {"abs_err", std::abs(e - pmf)}});
            csv << k << ',' << i << ',' << fmt_double(e) << ',' << fmt_double(pmf) << ','
                << fmt_double(std::abs(e - pmf)) << '\n';
        }
        results.push_back({{"k", k},
                           {"S_measure", measure.str()},
                           {"intervals", s.size()},
                           {"positions", positions.total()},
                           {"mean_count", law.mean()},
                           {"tv_distance", tv},
                           {"janson_bound", bound},
                           {"band", band},
                           {"within_bound", tv <= bound + band},
                           {"law", law_rows}});
    }
    rep.json["results"] = results;
    rep.csv = csv.str();
    return rep;
}

ExperimentReport cmd_bounds(const ExperimentConfig& c) {
    require_ks(c);
    const IntervalUnion s = config_set(c);
    const Rational measure = s.measure();
    std::vector<Rational> lambdas = c.lambdas.empty() ? std::vector<Rational>{Rational(1)} : c.lambdas;
    ExperimentReport rep;
    rep.json = report_header(c);
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "name,b,k,lambda,n,S_measure,value,flags\n";

    auto emit = [&](const std::string& name, unsigned k, const std::string& lambda, double value,
                    const std::string& flags) {
        rows.push_back({{"name", name}, {"b", c.b}, {"k", k}, {"lambda", lambda}, {"n", s.size()},
                        {"S_measure", measure.str()}, {"value", value}, {"flags", flags}});
        csv << name << ',' << c.b << ',' << k << ',' << lambda << ',' << s.size() << ','
            << measure.str() << ',' << fmt_double(value) << ',' << flags << '\n';
    };
    auto flag_str = [](const BoundValue& v, std::string extra) {
        if (v.not_asserted) extra += (extra.empty() ? "" : ";") + std::string("not_asserted");
        if (v.underflow) extra += (extra.empty() ? "" : ";") + std::string("underflow");
        return extra;
    };

    for (unsigned k : c.ks) {
        emit("janson_tv", k, "", janson_tv_bound(measure, s.size(), c.b, k), "");
        emit("janson_shell", k, "", janson_shell(s, c.b, k), "");
        const QuenchedParameters qp = quenched_parameters(measure, s.size(), c.b, k);
        emit("mcdiarmid_quenched", k, "", mcdiarmid_bound(qp.n, qp.c, qp.t),
             "N=" + std::to_string(qp.n) + ";c=" + fmt_double(qp.c) + ";t=" + fmt_double(qp.t));
        emit("quenched_series_term", k, "", quenched_series_term(measure, s.size(), c.b, k), "");
        for (const auto& lambda : lambdas) {
            const AnnealedBound ab = annealed_tv_bound(lambda, c.b, k);
            emit("annealed_tv", k, lambda.str(), ab.value, ab.below_one_over_k ? "below_1/k" : "");
            const TailBound tb = tail_bound(c.b, lambda, k);
            emit("tail", k, lambda.str(), tb.bound.value, flag_str(tb.bound, "k0=" + std::to_string(tb.k0)));
        }
        const BoundValue ok = o_k_measure_bound(c.b, k);
        emit("o_k_measure", k, "", ok.value, flag_str(ok, ""));
    }
    rep.json["rows"] = rows;
    rep.csv = csv.str();
    return rep;
}

namespace {

Json ok_json(const OkResult& r) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
        w.push_back({{"lambda", x.lambda.str()}, {"i", x.i}, {"deviation", x.deviation}});
    }
    return {{"k", r.k}, {"member", r.member}, {"witnesses", w}};
}

}  // namespace

ExperimentReport cmd_mltest(const ExperimentConfig& c) {
    MlCaps caps;
    caps.max_prefix = c.max_prefix;
    caps.max_words = c.max_words;
    caps.count = count_options(c);
    auto source = make_source(c);
    ExperimentReport rep;
    rep.json = report_header(c);
    rep.json["source_id"] = source->id();
    std::ostringstream csv;
    csv << "k,member,witnesses\n";
    Json results = Json::array();
    if (c.m) {
        if (c.ks.empty()) throw_usage("mltest --m needs --k or --k-range giving k_max");
        const unsigned k_max = *std::max_element(c.ks.begin(), c.ks.end());
        TmReport tm = t_m_report(*source, *c.m, k_max, caps);
        for (const auto& row : tm.rows) {
            results.push_back(ok_json(row));
            csv << row.k << ',' << row.member << ',' << row.witnesses.size() << '\n';
        }
        rep.json["t_m"] = {{"m", tm.m}, {"k_first", tm.k_first}, {"k_max", tm.k_max},
                           {"member", tm.member}, {"partial", !tm.member}, {"verdict", tm.verdict}};
    } else {
        require_ks(c);
        for (unsigned k : c.ks) {
            OkResult r = o_k_membership(*source, k, caps);
            results.push_back(ok_json(r));
            csv << r.k << ',' << r.member << ',' << r.witnesses.size() << '\n';
        }
    }
    rep.json["results"] = results;
    rep.csv = csv.str();
    return rep;
}

ExperimentReport cmd_synth(const ExperimentConfig& c) {
    if (c.len < 1) throw_usage("synth needs --len >= 1");
    if (c.beam < 1) throw_usage("synth needs --beam >= 1");
    SynthConfig sc;
    sc.k_lo = c.k_lo;
    sc.k_hi = c.k_hi;
    if (!c.lambdas.empty()) sc.lambdas = c.lambdas;
    sc.i_cap = c.i_cap;
    Alphabet a(c.b);
    SynthState state = greedy_extend(SynthState(a, sc), c.len, c.beam);

    std::vector<unsigned> ks;
    for (unsigned k = sc.k_lo; k <= sc.k_hi; ++k) ks.push_back(k);
    ScoreReport score = score_prefix(state.prefix(), a, ks, state.config().lambdas, sc.i_cap);

    ExperimentReport rep;
    rep.json = report_header(c);
    rep.json["penalty"] = state.penalty();
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "k,lambda,sufficient,sup_i,sup_deviation,penalty\n";
    for (const auto& r : score.rows) {
        rows.push_back({{"k", r.k}, {"lambda", r.lambda.str()}, {"sufficient", r.sufficient},
                        {"needed", r.needed}, {"sup_i", r.sup.i}, {"sup_deviation", r.sup.value},
                        {"penalty", r.penalty}});
        csv << r.k << ',' << r.lambda.str() << ',' << r.sufficient << ',' << r.sup.i << ','
            << fmt_double(r.sup.value) << ',' << fmt_double(r.penalty) << '\n';
    }
    rep.json["score"] = rows;
    rep.json["score_total"] = score.total_penalty;
    if (c.out) {
        write_sequence_file(*c.out, state.prefix(), a, parse_format(c.format));
        rep.json["written"] = *c.out;
    }
    return rep;
}

ExperimentReport cmd_selftest(const ExperimentConfig& c) {
    ExperimentReport rep;
    rep.json = report_header(c);
    Json checks = Json::array();
    bool all = true;
    auto check = [&](const std::string& name, bool ok) {
        checks.push_back({{"name", name}, {"pass", ok}});
        all = all && ok;
    };

    {
        auto src = champernowne_source(Alphabet(10));
        check("champernowne_b10_prefix", prefix(*src, 11) == std::vector<Symbol>{1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0});
    }
    {
        // joint occurrence at positions 1 and 2 over all x[1..9] and words
        std::uint64_t joint = 0, marginal = 0;
        for (unsigned x = 0; x < 512; ++x) {
            for (unsigned w = 0; w < 8; ++w) {
                unsigned at1 = (x >> 6) & 7u, at2 = (x >> 5) & 7u;
                marginal += at1 == w;
                joint += at1 == w && at2 == w;
            }
        }
        check("overlap_identity", joint * 64 == 4096 && marginal * 8 == 4096);
    }
    check("tail_k0", tail_bound(2, Rational(1), 24).k0 == 24 && tail_bound(2, Rational(7), 24).k0 == 24);
    check("mcdiarmid_t0", mcdiarmid_bound(100, 0.1, 0.0) == 2.0);
    {
        auto src = memory_source(std::vector<Symbol>(16, 0), Alphabet(2));
        check("mltest_k2_constant", !o_k_membership(*src, 2).member);
    }
    check("L_2", enumerate_L_k(2).values ==
                     std::vector<Rational>{Rational(1, 2), Rational(1), Rational(3, 2)});
    rep.json["checks"] = checks;
    rep.json["pass"] = all;
    std::ostringstream csv;
    csv << "name,pass\n";
    for (const auto& ch : checks) csv << ch["name"].get<std::string>() << ',' << ch["pass"].get<bool>() << '\n';
    rep.csv = csv.str();
    return rep;
}

ExperimentReport run_command(const ExperimentConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport rep;
    if (c.command == "analyze") {
        rep = cmd_analyze(c);
    } else if (c.command == "sweep") {
        rep = cmd_sweep(c);
    } else if (c.command == "mc-quenched") {
        rep = cmd_mc_quenched(c);
    } else if (c.command == "mc-annealed") {
        rep = cmd_mc_annealed(c);
    } else if (c.command == "bounds") {
        rep = cmd_bounds(c);
    } else if (c.command == "mltest") {
        rep = cmd_mltest(c);
    } else if (c.command == "synth") {
        rep = cmd_synth(c);
    } else if (c.command == "selftest") {
        rep = cmd_selftest(c);
    } else {
        throw_usage("unknown command '" + c.command + "'");
    }
    if (c.timing) {
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        rep.json["wall_clock_s"] = dt.count();
    }
    return rep;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const ExperimentConfig& c) {
    std::vector<std::filesystem::path> written;
    if (!c.out_dir) return written;
    std::filesystem::path dir(*c.out_dir);
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& bytes) {
        auto p = dir / name;
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f) throw_data("cannot write '" + p.string() + "'");
        f << bytes;
        written.push_back(p);
    };
    put(c.command + ".json", dump_json(report.json));
    if (!report.csv.empty()) put(c.command + ".csv", report.csv);
    for (const auto& [name, bytes] : report.extra) put(name, bytes);
    return written;
}

}  // namespace pgen
