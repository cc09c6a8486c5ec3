//! Holds the `acceptance` test target, which runs every verification
//! criterion at desk scale and prints one PASS/FAIL line per criterion.
