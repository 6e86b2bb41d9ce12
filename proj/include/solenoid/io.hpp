#pragma once

#include <string>

#include <json.hpp>

#include "solenoid/martingale.hpp"
#include "solenoid/multiplicity.hpp"
#include "solenoid/wavelet.hpp"

namespace solenoid {

using Json = nlohmann::json;

// Complex values serialize as a plain number when purely real, else [re, im];
// both forms parse.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

// {"type":"circle","N":2} | {"type":"sft","A":[[1,1],[1,0]]} |
// {"type":"ifs","scale":3,"digits":[0,2]}
Json system_to_json(const SystemSpec& sys);
SystemSpec system_from_json(const Json& j);

// {"resolution": L, "values": [...]}
Json step_to_json(const StepFunction& f);
StepFunction step_from_json(const SystemSpec& sys, const Json& j);
Json measure_to_json(const MeasureVector& mu);
MeasureVector measure_from_json(const SystemSpec& sys, const Json& j);

// {"N":2,"a":{"0":...,"1":...}} | {"step":{"N":2,"level":L,"values":[...]}}
Json filter_to_json(const FilterSpec& m0);
FilterSpec filter_from_json(const Json& j);

// {"resolution": L, "values": [int or "inf", ...]}
Json mult_to_json(const MultFn& m);
MultFn mult_from_json(const SystemSpec& sys, const Json& j);

// {"cell":{"level":L,"index":j}} | {"word":[...]}
Json point_to_json(const PointCode& p);
PointCode point_from_json(const SystemSpec& sys, const Json& j);

// {"m0_ref":..., "h_ref":..., "K":..., "levels":[step,...]}
Json martingale_to_json(const MartingaleFn& m, const std::string& m0_ref,
                        const std::string& h_ref);

// Shortest exact decimal form, stable across runs.
std::string format_double(double v);

// CSV bodies, one header line plus one row per record.
std::string step_to_csv(const StepFunction& f);        // cell_midpoint,re,im
std::string scaling_to_csv(const ScalingApprox& s);    // x,re,im
std::string mult_to_csv(const MultFn& m);              // cell_midpoint,value

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump_json(const Json& j);

} // namespace solenoid
