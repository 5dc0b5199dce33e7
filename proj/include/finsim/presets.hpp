#pragma once

namespace finsim::presets {

// Membrane multipliers for a single fin ray cast into the 33 x 33 x 0.8 mm
// silicone test membrane. Applied on top of the bare-ray parameters.
extern const double kMembraneStiffnessFactor;
extern const double kMembraneDampingFactor;

// Tip weights used by the bench characterisation runs, kg.
extern const double kBenchLoadsKg[4];

// Electrical overhead of the H-bridge driver stage, fitted so that eight
// coils at 212 mA peak sinusoidal drive draw 11.8 W total.
extern const double kDriverOverhead;

}  // namespace finsim::presets
