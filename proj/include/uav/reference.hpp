#pragma once

// Externally obtained analysis results (FEM, CFD, trained detectors) for the
// reference airframe. They are not recomputed here; reports surface them
// verbatim and the trade study consumes the frame comparison.

#include <array>
#include <string_view>

namespace uav::reference {

struct FrameFem {
  std::string_view frame;
  double tip_deflection_m;
  double joint_von_mises_pa;
};

// 13 N applied at every arm tip.
inline constexpr double kFrameTipLoad_n = 13.0;
inline constexpr std::array<FrameFem, 3> kFrameFem{{
    {"Hybrid X", 2.381e-4, 2.202e7},
    {"H", 1.957e-4, 1.2e7},
    {"Hybrid H", 1.109e-3, 1.607e7},
}};

// Topology optimisation of the hub plates, fraction of mass removed.
inline constexpr double kHubPlateOptimisedReduction = 0.30;

// Sandwich hub plate vs solid CFRP plate of the same thickness.
inline constexpr double kSandwichMassReduction = 0.33;
inline constexpr double kSandwichCostReduction = 0.42;

inline constexpr double kLandingGearLoad_n = 40.0;
inline constexpr double kLandingGearStress_pa = 1.33e6;
inline constexpr double kLatchStress_pa = 1.81e6;
inline constexpr double kLatchSafetyFactor = 17.0;
inline constexpr double kAbsTensileStrength_pa = 31.33e6;

// CFD run settings and results.
inline constexpr double kCfdInletVelocity_mps = 15.0;
inline constexpr double kCfdPropellerSpeed_radps = 1300.0;
inline constexpr double kCfdMaxMeshSize_m = 2.5e-3;
inline constexpr int kCfdIterations = 200;
inline constexpr double kCfdLift_n = 19.65;
inline constexpr double kCfdDrag_n = 1.39291;

// Detector accuracies on their test sets.
inline constexpr double kSsdMobileNetAccuracy = 0.99;
inline constexpr double kYoloV5Accuracy = 0.90;
inline constexpr int kSsdMobileNetTrainingExamples = 150;
inline constexpr int kYoloV5TrainingExamples = 1024;

}  // namespace uav::reference
