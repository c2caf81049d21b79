#include "cct/token.hpp"

namespace cct {

const char* terminal_type_label(TerminalType t) {
    switch (t) {
        case TerminalType::Keyword: return "keyword";
        case TerminalType::Type: return "type";
        case TerminalType::Identifier: return "identifier";
        case TerminalType::Operator: return "operator";
        case TerminalType::Punctuation: return "punctuation";
        case TerminalType::NumberLiteral: return "number_literal";
        case TerminalType::StringLiteral: return "string_literal";
        case TerminalType::CharLiteral: return "char_literal";
    }
    return "identifier";
}

const char* node_kind_label(NodeKind k) {
    switch (k) {
        case NodeKind::TranslationUnit: return "translation_unit";
        case NodeKind::FuncDefinition: return "func_definition";
        case NodeKind::FuncDeclarator: return "func_declarator";
        case NodeKind::ParamList: return "param_list";
        case NodeKind::ParameterDeclaration: return "parameter_declaration";
        case NodeKind::CompoundStmt: return "compound_stmt";
        case NodeKind::DeclStmt: return "decl_stmt";
        case NodeKind::InitDeclarator: return "init_declarator";
        case NodeKind::PointerDeclarator: return "pointer_declarator";
        case NodeKind::ArrayDeclarator: return "array_declarator";
        case NodeKind::StructSpecifier: return "struct_specifier";
        case NodeKind::UnionSpecifier: return "union_specifier";
        case NodeKind::EnumSpecifier: return "enum_specifier";
        case NodeKind::IfStmt: return "if_stmt";
        case NodeKind::ForStmt: return "for_stmt";
        case NodeKind::WhileStmt: return "while_stmt";
        case NodeKind::DoStmt: return "do_stmt";
        case NodeKind::ReturnStmt: return "return_stmt";
        case NodeKind::BreakStmt: return "break_stmt";
        case NodeKind::ContinueStmt: return "continue_stmt";
        case NodeKind::SwitchStmt: return "switch_stmt";
        case NodeKind::CaseStmt: return "case_stmt";
        case NodeKind::GotoStmt: return "goto_stmt";
        case NodeKind::LabelStmt: return "label_stmt";
        case NodeKind::ExprStmt: return "expr_stmt";
        case NodeKind::ParenthesizedExpr: return "parenthesized_expr";
        case NodeKind::BinaryExpr: return "binary_expr";
        case NodeKind::UnaryExpr: return "unary_expr";
        case NodeKind::UpdateExpr: return "update_expr";
        case NodeKind::AssignExpr: return "assign_expr";
        case NodeKind::CondExpr: return "cond_expr";
        case NodeKind::CastExpr: return "cast_expr";
        case NodeKind::SizeofExpr: return "sizeof_expr";
        case NodeKind::CallExpr: return "call_expr";
        case NodeKind::ArgList: return "arg_list";
        case NodeKind::SubscriptExpr: return "subscript_expr";
        case NodeKind::FieldExpr: return "field_expr";
        case NodeKind::InitList: return "init_list";
        case NodeKind::CommaExpr: return "comma_expr";
    }
    return "translation_unit";
}

}  // namespace cct
