//! Exercises the C ABI end to end: handle lifecycles, status codes, error
//! messages, and the sampling and counting entry points.

use std::ffi::{CStr, CString};
use std::ptr;

use expander_matching_ffi::*;

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(em_last_error_message())
            .to_string_lossy()
            .into_owned()
    }
}

fn make(f: impl FnOnce(*mut *mut EmGraph) -> EmStatus) -> *mut EmGraph {
    let mut g: *mut EmGraph = ptr::null_mut();
    let status = f(&mut g);
    assert_eq!(status, EmStatus::EmOk, "{}", last_error());
    assert!(!g.is_null());
    g
}

#[test]
fn version_is_nonempty() {
    let v = unsafe { CStr::from_ptr(em_version()) };
    assert!(!v.to_bytes().is_empty());
}

#[test]
fn graph_lifecycle_and_text_round_trip() {
    unsafe {
        let g = make(|out| em_graph_complete(3, out));
        assert_eq!(em_graph_num_vertices(g), 6);
        assert_eq!(em_graph_num_edges(g), 15);

        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(em_graph_to_text(g, &mut text), EmStatus::EmOk);
        let owned = CStr::from_ptr(text).to_str().unwrap().to_owned();
        em_string_free(text);

        let c_text = CString::new(owned).unwrap();
        let h = make(|out| em_graph_from_text(c_text.as_ptr(), out));

        let mut hash_g: *mut std::ffi::c_char = ptr::null_mut();
        let mut hash_h: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(em_graph_content_hash(g, &mut hash_g), EmStatus::EmOk);
        assert_eq!(em_graph_content_hash(h, &mut hash_h), EmStatus::EmOk);
        assert_eq!(CStr::from_ptr(hash_g), CStr::from_ptr(hash_h));
        em_string_free(hash_g);
        em_string_free(hash_h);

        em_graph_free(g);
        em_graph_free(h);
    }
}

#[test]
fn spectral_queries_match_known_graphs() {
    unsafe {
        let g = make(|out| em_graph_cocktail(6, out));
        let mut sigma2 = f64::NAN;
        assert_eq!(em_graph_sigma2(g, &mut sigma2), EmStatus::EmOk);
        assert!((sigma2 - 0.2).abs() < 1e-8, "sigma2 = {sigma2}");

        let mut is = false;
        assert_eq!(em_graph_is_expander(g, 0.2, &mut is), EmStatus::EmOk);
        assert!(is);
        assert_eq!(em_graph_is_expander(g, 0.19, &mut is), EmStatus::EmOk);
        assert!(!is);
        em_graph_free(g);

        let p = make(|out| em_graph_petersen(out));
        assert_eq!(em_graph_sigma2(p, &mut sigma2), EmStatus::EmOk);
        assert!((sigma2 - 2.0 / 3.0).abs() < 1e-8, "sigma2 = {sigma2}");
        em_graph_free(p);
    }
}

#[test]
fn null_and_invalid_arguments_are_reported() {
    unsafe {
        assert_eq!(em_graph_complete(3, ptr::null_mut()), EmStatus::EmNullArgument);
        assert!(last_error().contains("null"));

        let mut sigma2 = 0.0;
        assert_eq!(em_graph_sigma2(ptr::null(), &mut sigma2), EmStatus::EmNullArgument);

        let garbage = CString::new("not a graph").unwrap();
        let mut g: *mut EmGraph = ptr::null_mut();
        assert_eq!(
            em_graph_from_text(garbage.as_ptr(), &mut g),
            EmStatus::EmInvalidArgument
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        let missing = CString::new("/nonexistent/graph.txt").unwrap();
        assert_eq!(em_graph_load(missing.as_ptr(), &mut g), EmStatus::EmIo);

        // Null handles are tolerated by the observers and the frees.
        assert_eq!(em_graph_num_vertices(ptr::null()), 0);
        assert_eq!(em_matching_size(ptr::null()), 0);
        assert_eq!(em_matching_partner(ptr::null(), 0), -1);
        em_graph_free(ptr::null_mut());
        em_matching_free(ptr::null_mut());
    }
}

#[test]
fn sampling_yields_a_perfect_matching() {
    unsafe {
        let g = make(|out| em_graph_complete(3, out));
        let mut m: *mut EmMatching = ptr::null_mut();
        let status = em_sample_perfect_matching(g, 0.2, 0.2, 5, 2000, &mut m);
        assert_eq!(status, EmStatus::EmOk, "{}", last_error());
        assert_eq!(em_matching_size(m), 3);

        // Pairs cover every vertex exactly once and agree with partner().
        let mut buf = [usize::MAX; 6];
        assert_eq!(em_matching_copy_pairs(m, buf.as_mut_ptr(), 6), EmStatus::EmOk);
        let mut seen = [false; 6];
        for pair in buf.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            assert!(u < v && v < 6);
            assert!(!seen[u] && !seen[v]);
            seen[u] = true;
            seen[v] = true;
            assert_eq!(em_matching_partner(m, u), v as i64);
            assert_eq!(em_matching_partner(m, v), u as i64);
        }
        assert_eq!(em_matching_partner(m, 17), -1);

        // A too-small buffer is rejected without writing.
        assert_eq!(
            em_matching_copy_pairs(m, buf.as_mut_ptr(), 5),
            EmStatus::EmInvalidArgument
        );

        em_matching_free(m);
        em_graph_free(g);
    }
}

#[test]
fn sampling_reports_budget_exhaustion() {
    unsafe {
        // Two pendant vertices share vertex 3 as their only neighbor, so at
        // most one of them is ever matched and every checkpoint runs out.
        let text = CString::new("6 8\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n3 5\n").unwrap();
        let g = make(|out| em_graph_from_text(text.as_ptr(), out));
        let mut m: *mut EmMatching = ptr::null_mut();
        let status = em_sample_perfect_matching(g, 0.9, 0.2, 1, 50, &mut m);
        assert_eq!(status, EmStatus::EmBudgetExhausted);
        assert!(m.is_null());
        assert!(!last_error().is_empty());
        em_graph_free(g);
    }
}

#[test]
fn counting_matches_exact_value_on_k4() {
    unsafe {
        let g = make(|out| em_graph_complete(2, out));
        let mut result = EmCountResult {
            estimate: 0.0,
            log_estimate: 0.0,
            steps_total: 0,
            degenerate_top: true,
        };
        let status = em_count_perfect_matchings(g, 1.0 / 3.0, 0.1, 7, &mut result);
        assert_eq!(status, EmStatus::EmOk, "{}", last_error());
        assert!(!result.degenerate_top);
        assert!(
            (result.estimate - 3.0).abs() < 0.3,
            "estimate = {}",
            result.estimate
        );
        assert!((result.log_estimate - result.estimate.ln()).abs() < 1e-12);
        assert!(result.steps_total > 0);
        em_graph_free(g);
    }
}
