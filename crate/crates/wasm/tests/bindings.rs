use genfrob_wasm::{module, poset, sequence};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn sequence_reports_values() {
    let v = parse(&sequence("3,5,8", 4).unwrap());
    assert_eq!(v["f_values"], serde_json::json!([7, 12, 17, 22]));
    assert_eq!(v["m_values"], serde_json::json!([0, 8, 16, 21]));
}

#[test]
fn module_lists_generators() {
    let v = parse(&module("3,4,11", 3).unwrap());
    assert_eq!(v["F_k"], 17);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn poset_marks_module_elements() {
    let v = parse(&poset("3,5,8", 2).unwrap());
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 8);
    let module: Vec<&str> = v["module"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| elements[i.as_u64().unwrap() as usize].as_str().unwrap())
        .collect();
    assert_eq!(module, ["0", "3", "5", "6", "7"]);
    for e in v["hasse"].as_array().unwrap() {
        let (i, j) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        assert!(v["degrees"][i].as_i64() < v["degrees"][j].as_i64());
    }
    assert_eq!(v["full"], false);
}

#[test]
fn bad_input_is_an_error() {
    assert!(sequence("3,x", 4).is_err());
    assert!(poset("3,5,8", 0).is_err());
    assert!(module("4,6", 2).is_err());
    assert!(sequence("3,5,1000", 4).is_err());
    assert!(sequence("3,5,8", 50).is_err());
}
