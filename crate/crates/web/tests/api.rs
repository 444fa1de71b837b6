use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn generated_graph_feeds_the_other_exports() {
    let g = parse(imlab_web::generate("theta(2,3,4)"));
    let g6 = g["graph6"].as_str().unwrap();
    assert_eq!(parse(imlab_web::detect(g6, "theta"))["status"], "found");
    assert_eq!(parse(imlab_web::detect(g6, "even-hole"))["status"], "found");

    let r = parse(imlab_web::check_induced_minor(g6, "K2,3"));
    assert_eq!(r["found"], true);
    assert_eq!(r["branch_sets"].as_array().unwrap().len(), 5);
}

#[test]
fn errors_come_back_as_json() {
    assert!(parse(imlab_web::detect("not a graph !", "theta"))["error"].is_string());
    assert!(parse(imlab_web::check_induced_minor("Dhc", "??"))["error"].is_string());
}
