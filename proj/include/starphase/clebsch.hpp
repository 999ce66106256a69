#pragma once

namespace starphase {

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j3 m3> with all arguments given
// as twice their physical value (so half-integers are exact integers here).
// Evaluated by the Racah factorial sum over exact big-integer rationals, then
// rounded once to double; safe for 2j up to ~40 where naive double factorial
// sums would cancel catastrophically.
double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3);

}  // namespace starphase
