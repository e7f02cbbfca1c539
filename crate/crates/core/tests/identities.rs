use riordan::identities::{all_passed, check, names, run_all, DEFAULT_N_MAX};

#[test]
fn suite_passes_at_default_range() {
    let reports = run_all(DEFAULT_N_MAX);
    for r in &reports {
        println!("{}", r.to_json_line());
    }
    assert_eq!(reports.len(), names().len());
    assert!(all_passed(&reports));
}

#[test]
fn reports_follow_registry_order() {
    let ids: Vec<String> = run_all(3).into_iter().map(|r| r.id).collect();
    assert_eq!(ids, names());
}

#[test]
fn each_identity_by_name() {
    for id in names() {
        let r = check(id, 6).unwrap();
        assert!(r.passed(), "{}", r.to_json_line());
        assert!(r.checked > 0 || r.n_min > r.n_max, "{id} checked nothing");
    }
}
