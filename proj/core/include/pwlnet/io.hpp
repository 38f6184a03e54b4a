#pragma once

#include <string>
#include <vector>

#include "pwlnet/cpwl.hpp"
#include "pwlnet/kst.hpp"
#include "pwlnet/rational.hpp"
#include "pwlnet/relu_net.hpp"
#include "pwlnet/shatter.hpp"

namespace pwlnet {

// JSON text layer. Scalars are plain numbers in double mode and "p/q"
// strings in exact mode; every reader accepts both forms, so a file written
// by either mode loads in either mode (rational -> double rounds once).
//
// CPwL:    {"lo", "hi", "nodes", "values"}   nodes[0] == lo, nodes.back() == hi
// Network: {"input_dim", "output_dim", "layers": [{"weights": [[...]], "biases": [...]}]}
//          weight rows are per output neuron
// Problem: {"d", "lambdas", "inners": [cpwl...], "outer": {"kind": "cpwl", ...cpwl}}

std::string cpwl_to_json_text(const CpwlFunction& f, int indent = 2);
std::string cpwl_to_json_text(const BasicCpwl<Rational>& f, int indent = 2);
CpwlFunction cpwl_from_json_text(const std::string& text);
BasicCpwl<Rational> cpwl_rational_from_json_text(const std::string& text);

std::string network_to_json_text(const ReluNetwork& n, int indent = 2);
std::string network_to_json_text(const BasicReluNetwork<Rational>& n, int indent = 2);
ReluNetwork network_from_json_text(const std::string& text);
BasicReluNetwork<Rational> network_rational_from_json_text(const std::string& text);

std::string kst_problem_to_json_text(const KstProblem& p, int indent = 2);
KstProblem kst_problem_from_json_text(const std::string& text);

// File wrappers. Parse failures raise IoError; structurally valid JSON with
// inconsistent content raises ValidationError from the object constructors.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

CpwlFunction read_cpwl(const std::string& path);
BasicCpwl<Rational> read_cpwl_rational(const std::string& path);
void write_cpwl(const std::string& path, const CpwlFunction& f);
void write_cpwl(const std::string& path, const BasicCpwl<Rational>& f);

ReluNetwork read_network(const std::string& path);
BasicReluNetwork<Rational> read_network_rational(const std::string& path);
void write_network(const std::string& path, const ReluNetwork& n);
void write_network(const std::string& path, const BasicReluNetwork<Rational>& n);

KstProblem read_kst_problem(const std::string& path);
void write_kst_problem(const std::string& path, const KstProblem& p);

// CSV reports

void write_kst_csv(const std::string& path, const std::vector<KstRateRow>& rows);
void write_shatter_csv(const std::string& path, const ShatterReport& report);
void write_growth_csv(const std::string& path, const std::vector<GrowthRow>& rows);

} // namespace pwlnet
