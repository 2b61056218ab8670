#include "defs.h"

int script_count = 0;

int check_script_id(typval_T *argvars)
{
  varnumber_T id;

  if (argvars[0].v_type != VAR_NUMBER) {
    emsg(e_dictionary_required);
    return FAIL;
  }
  id = argvars[0].vval.v_number;
  if (id <= 0 || id > script_count) {
    semsg(e_invalid_value_for_argument_str_str, "id", tv_get_string(&argvars[0]));
    return FAIL;
  }
  return OK;
}

void f_getscriptinfo(typval_T *argvars, typval_T *rettv)
{
  scid_T sid = -1;
  char_u *pat = NULL;
  int filterpat = false;

  rettv->v_type = VAR_NUMBER;
  rettv->vval.v_number = 0;

  if (argvars[0].v_type == VAR_DICT) {
    dictitem_T *sid_di = dict_find(argvars[0].vval.v_dict, (char_u *)"sid", -1);
    if (sid_di != NULL) {
      int error = false;
      sid = (int)tv_get_number_chk(&sid_di->di_tv, &error);
      if (error) {
        return;
      }
      if (sid <= 0) {
        semsg(e_invalid_value_for_argument_str_str, "sid", tv_get_string(&sid_di->di_tv));
        return;
      }
    } else {
      pat = dict_get_string(argvars[0].vval.v_dict, "name", true);
      if (pat != NULL) {
        filterpat = true;
      }
    }
  }

  rettv->vval.v_number = sid + filterpat;
}
