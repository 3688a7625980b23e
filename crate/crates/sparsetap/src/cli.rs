pub fn cli(_argv: Vec<String>) -> i32 { 0 }
