#pragma once

// Generated by tools/embed_manifest.py from data/systems.json. Do not edit by hand.

namespace pdm {

inline constexpr const char* kBuiltinManifest = R"MANIFEST({
  "format": "pdm-systems",
  "version": 1,
  "systems": [
    {
      "id": 1,
      "inverse_mass": "(r^2+1)^2",
      "potential": "-3*r^2",
      "parameters": [],
      "separation": "spherical",
      "box": {"lo": [-3, -3, -3], "hi": [3, 3, 3]},
      "generators": [
        {"name": "M41", "role": "listed", "terms": [["0.5", "K1"], ["-0.5", "P1"]]},
        {"name": "M42", "role": "listed", "terms": [["0.5", "K2"], ["-0.5", "P2"]]},
        {"name": "M43", "role": "listed", "terms": [["0.5", "K3"], ["-0.5", "P3"]]},
        {"name": "M21", "role": "listed", "terms": [["1", "M21"]]},
        {"name": "M31", "role": "listed", "terms": [["1", "M31"]]},
        {"name": "M32", "role": "listed", "terms": [["1", "M32"]]},
        {"name": "M41_printed", "role": "candidate", "terms": [["0.5", "K1"], ["0.5", "P1"]],
         "note": "general operator list gives M4i = (K+P)/2, identical to M0i"},
        {"name": "P1", "role": "control", "terms": [["1", "P1"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 2,
      "inverse_mass": "(r^2-1)^2",
      "potential": "-3*r^2",
      "parameters": [],
      "separation": "spherical",
      "box": {"lo": [-3, -3, -3], "hi": [3, 3, 3]},
      "generators": [
        {"name": "M01", "role": "listed", "terms": [["0.5", "K1"], ["0.5", "P1"]]},
        {"name": "M02", "role": "listed", "terms": [["0.5", "K2"], ["0.5", "P2"]]},
        {"name": "M03", "role": "listed", "terms": [["0.5", "K3"], ["0.5", "P3"]]},
        {"name": "M21", "role": "listed", "terms": [["1", "M21"]]},
        {"name": "M31", "role": "listed", "terms": [["1", "M31"]]},
        {"name": "M32", "role": "listed", "terms": [["1", "M32"]]},
        {"name": "P1", "role": "control", "terms": [["1", "P1"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 3,
      "inverse_mass": "x3^2",
      "potential": "nu*log(x3)",
      "parameters": ["nu"],
      "separation": "cartesian-x3",
      "box": {"lo": [-2, -2, 0.5], "hi": [2, 2, 4.5]},
      "generators": [
        {"name": "P1", "role": "listed", "terms": [["1", "P1"]]},
        {"name": "P2", "role": "listed", "terms": [["1", "P2"]]},
        {"name": "M12", "role": "listed", "terms": [["1", "M12"]]},
        {"name": "D+nu*t", "role": "listed", "terms": [["1", "D"], ["nu*t", "1"]]},
        {"name": "K1", "role": "auxiliary", "terms": [["1", "K1"]], "note": "extra symmetry of the nu=0 sub-case"},
        {"name": "K2", "role": "auxiliary", "terms": [["1", "K2"]], "note": "extra symmetry of the nu=0 sub-case"},
        {"name": "P3", "role": "control", "terms": [["1", "P3"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 4,
      "inverse_mass": "rt^3",
      "potential": "kappa*x3+lambda*rt",
      "parameters": ["kappa", "lambda"],
      "separation": "cylindrical",
      "nonseparable_unless_zero": "kappa",
      "forbid_all_zero": true,
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "P3+kappa*t", "role": "listed", "terms": [["1", "P3"], ["kappa*t", "1"]]},
        {"name": "D+i*t*dt", "role": "listed", "terms": [["1", "D"], ["t", "P0"]]},
        {"name": "M12", "role": "listed", "terms": [["1", "M12"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 5,
      "inverse_mass": "x1^3",
      "potential": "lambda*x1+kappa*x3",
      "parameters": ["lambda", "kappa"],
      "separation": "cartesian-x1",
      "nonseparable_unless_zero": "kappa",
      "forbid_all_zero": true,
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "P3+kappa*t", "role": "listed", "terms": [["1", "P3"], ["kappa*t", "1"]]},
        {"name": "P2", "role": "listed", "terms": [["1", "P2"]]},
        {"name": "D+i*t*dt", "role": "listed", "terms": [["1", "D"], ["t", "P0"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 6,
      "inverse_mass": "x3^(sigma+2)",
      "potential": "kappa*x3^sigma",
      "parameters": ["kappa", "sigma"],
      "separation": "cartesian-x3",
      "excluded_sigma": [0, 1, -2],
      "forbid_all_zero": true,
      "box": {"lo": [-2, -2, 0.5], "hi": [2, 2, 4.5]},
      "generators": [
        {"name": "P1", "role": "listed", "terms": [["1", "P1"]]},
        {"name": "P2", "role": "listed", "terms": [["1", "P2"]]},
        {"name": "M12", "role": "listed", "terms": [["1", "M12"]]},
        {"name": "D+i*sigma*t*dt", "role": "listed", "terms": [["1", "D"], ["sigma*t", "P0"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 7,
      "inverse_mass": "rt^(sigma+2)*exp(lambda*phi)",
      "potential": "kappa*rt^sigma*exp(lambda*phi)",
      "parameters": ["kappa", "lambda", "sigma"],
      "separation": "cylindrical",
      "excluded_sigma": [0],
      "forbid_all_zero": true,
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "M12+i*lambda*t*dt", "role": "listed", "terms": [["1", "M12"], ["lambda*t", "P0"]]},
        {"name": "P3", "role": "listed", "terms": [["1", "P3"]]},
        {"name": "D+i*sigma*t*dt", "role": "listed", "terms": [["1", "D"], ["sigma*t", "P0"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 8,
      "inverse_mass": "rt^2",
      "potential": "lambda^2/2*phi^2+mu*phi+nu*log(rt)",
      "parameters": ["lambda", "mu", "nu"],
      "separation": "cylindrical",
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "B1_1", "role": "listed", "terms": [["lambda*sin(lambda*t)", "M12"], ["-(lambda^2*phi+mu)*cos(lambda*t)", "1"]],
         "note": "binary operator and constant restored: minus sign, mu in place of nu"},
        {"name": "B1_2", "role": "listed", "derive": "dt", "of": "B1_1"},
        {"name": "D+nu*t", "role": "listed", "terms": [["1", "D"], ["nu*t", "1"]]},
        {"name": "P3", "role": "listed", "terms": [["1", "P3"]]},
        {"name": "B1_1_minus_nu", "role": "candidate", "terms": [["lambda*sin(lambda*t)", "M12"], ["-(lambda^2*phi+nu)*cos(lambda*t)", "1"]]},
        {"name": "B1_1_plus_nu", "role": "candidate", "terms": [["lambda*sin(lambda*t)", "M12"], ["(lambda^2*phi+nu)*cos(lambda*t)", "1"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 9,
      "inverse_mass": "rt^2*exp(sigma*phi)",
      "potential": "kappa*exp(sigma*phi)+omega^2/2*exp(-sigma*phi)",
      "parameters": ["kappa", "omega", "sigma"],
      "separation": "cylindrical",
      "forbid_all_zero": true,
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "N1_1", "role": "listed",
         "terms": [["omega*cos(omega*sigma*t)", "M12"], ["sin(omega*sigma*t)", "P0"], ["-omega^2*sin(omega*sigma*t)*exp(-sigma*phi)", "1"]],
         "note": "Theta read as phi; sign of the sine term reversed relative to the printed list"},
        {"name": "N1_2", "role": "listed", "derive": "dt", "of": "N1_1"},
        {"name": "P3", "role": "listed", "terms": [["1", "P3"]]},
        {"name": "D", "role": "listed", "terms": [["1", "D"]]},
        {"name": "K3", "role": "listed", "terms": [["1", "K3"]]},
        {"name": "N1_1_printed", "role": "candidate",
         "terms": [["omega*cos(omega*sigma*t)", "M12"], ["-sin(omega*sigma*t)", "P0"], ["omega^2*sin(omega*sigma*t)*exp(-sigma*phi)", "1"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 10,
      "inverse_mass": "r^2",
      "potential": "nu*log(r)+lambda^2/2*log(r)^2",
      "parameters": ["nu", "lambda"],
      "separation": "spherical",
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "B2_1", "role": "listed", "terms": [["sin(lambda*t)", "D"], ["-cos(lambda*t)*(lambda*log(r)+nu/lambda)", "1"]]},
        {"name": "B2_2", "role": "listed", "derive": "dt", "of": "B2_1"},
        {"name": "L1", "role": "listed", "terms": [["1", "M23"]]},
        {"name": "L2", "role": "listed", "terms": [["1", "M31"]]},
        {"name": "L3", "role": "listed", "terms": [["1", "M12"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    },
    {
      "id": 11,
      "inverse_mass": "r^(2+sigma)",
      "potential": "kappa*r^sigma+omega^2/2*r^(-sigma)",
      "parameters": ["kappa", "omega", "sigma"],
      "separation": "spherical",
      "excluded_sigma": [0],
      "forbid_all_zero": true,
      "box": {"lo": [0.5, -2, -2], "hi": [4.5, 2, 2]},
      "generators": [
        {"name": "N2_1", "role": "listed",
         "terms": [["omega*cos(omega*sigma*t)", "D"], ["sin(omega*sigma*t)", "P0"], ["-omega^2*sin(omega*sigma*t)*r^(-sigma)", "1"]]},
        {"name": "N2_2", "role": "listed", "derive": "dt", "of": "N2_1",
         "note": "second member taken as the time derivative of N2_1; the printed list differentiates N1_1"},
        {"name": "L1", "role": "listed", "terms": [["1", "M23"]]},
        {"name": "L2", "role": "listed", "terms": [["1", "M31"]]},
        {"name": "L3", "role": "listed", "terms": [["1", "M12"]]},
        {"name": "P0", "role": "auxiliary", "terms": [["1", "P0"]]},
        {"name": "unit", "role": "auxiliary", "terms": [["1", "1"]]}
      ]
    }
  ]
}
)MANIFEST";

}  // namespace pdm
