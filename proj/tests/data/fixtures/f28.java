import java.util.*;

public class Solution {
  public static int calc(int[] nums, int k) {
    List<Integer> out = new ArrayList<>();
    for (int i = 0; i < nums.length; i++) {
      if (nums[i] > k) {
        out.add(nums[i] * 2);
      }
    }

    int mx=nums[0];
    for (int cur : nums) {
      if (cur > mx) {
        mx = cur;
      }
    }
    // Count how many times the size can be halved
    int m = nums.length;
    int cnt = 0;
    while (m > 0) {
      m /= 2;
      cnt += 1;
    }

    // Sum the values divisible by k
    int sumVal = 0;
    for (int val : nums) {
      if (val % k == 0) {
        sumVal += val;
      }
    }
    // Count pairs whose sum is divisible by k
    int pairs = 0;
    for (int i = 0; i < nums.length; i++) {
      for (int j = i + 1; j < nums.length; ++j) {
        if ((nums[i]+nums[j]) % k == 0) {
          pairs += 1;
        }
      }
    }

    int parity = nums.length % 2==0 ? 1 : 0;
    return out.size() + mx + cnt + sumVal + pairs + parity;
  }

  public static void main(String[] args) {
    int[] nums = {3, 6, 9, 12, 15};
    System.out.println(calc(nums, 3));
  }
}
